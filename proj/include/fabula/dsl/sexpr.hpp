#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fabula {

// Raised for any malformed input file. what() carries "line:col: message"
// when a position is known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line = 0, int column = 0);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

struct SExpr {
  enum class Kind { kAtom, kString, kList };
  Kind kind = Kind::kList;
  std::string text;  // atom or string payload
  std::vector<SExpr> items;
  int line = 0;
  int column = 0;

  bool is_atom() const { return kind == Kind::kAtom; }
  bool is_string() const { return kind == Kind::kString; }
  bool is_list() const { return kind == Kind::kList; }
  bool is_atom(std::string_view s) const { return is_atom() && text == s; }

  [[noreturn]] void fail(const std::string& message) const;
};

// Reads every top-level form. `;` starts a comment running to end of line.
// Atom matching is case-sensitive.
std::vector<SExpr> read_sexprs(std::string_view text);

std::string to_string(const SExpr& expr);

std::string read_file(const std::string& path);

}  // namespace fabula
