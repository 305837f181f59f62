#include "fabula/dsl/sexpr.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace fabula {

namespace {

std::string with_position(const std::string& message, int line, int column) {
  if (line <= 0) return message;
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ';') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr node;
    node.line = line_;
    node.column = column_;
    char c = peek();
    if (c == ')') throw ParseError("unexpected ')'", line_, column_);
    if (c == '(') {
      advance();
      node.kind = SExpr::Kind::kList;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw ParseError("unterminated list", node.line, node.column);
        if (peek() == ')') {
          advance();
          return node;
        }
        node.items.push_back(read());
      }
    }
    if (c == '"') {
      advance();
      node.kind = SExpr::Kind::kString;
      for (;;) {
        if (pos_ >= text_.size()) throw ParseError("unterminated string", node.line, node.column);
        char d = peek();
        advance();
        if (d == '"') return node;
        if (d == '\\') {
          if (pos_ >= text_.size()) throw ParseError("unterminated string", node.line, node.column);
          d = peek();
          advance();
          if (d == 'n') d = '\n';
        }
        node.text += d;
      }
    }
    node.kind = SExpr::Kind::kAtom;
    while (pos_ < text_.size()) {
      char d = peek();
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';' || d == '"') break;
      node.text += d;
      advance();
    }
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

void print(const SExpr& e, std::string& out) {
  switch (e.kind) {
    case SExpr::Kind::kAtom:
      out += e.text;
      break;
    case SExpr::Kind::kString:
      out += '"';
      for (char c : e.text) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
          out += "\\n";
          continue;
        }
        out += c;
      }
      out += '"';
      break;
    case SExpr::Kind::kList:
      out += '(';
      for (std::size_t i = 0; i < e.items.size(); ++i) {
        if (i > 0) out += ' ';
        print(e.items[i], out);
      }
      out += ')';
      break;
  }
}

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(with_position(message, line, column)), line_(line), column_(column) {}

void SExpr::fail(const std::string& message) const { throw ParseError(message, line, column); }

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).read_all(); }

std::string to_string(const SExpr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace fabula
