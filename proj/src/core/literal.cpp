#include "fabula/core/literal.hpp"

#include <algorithm>
#include <stdexcept>

namespace fabula {

Term Term::variable(std::string_view name) {
  if (name.empty() || name.front() != '?') {
    throw std::invalid_argument("variable names must begin with '?': " + std::string(name));
  }
  return variable(intern(name));
}

Term Term::literal(Literal lit) {
  Term t(Kind::kLiteral, 0);
  t.nested_ = std::make_shared<const Literal>(std::move(lit));
  return t;
}

bool Term::is_ground() const {
  switch (kind_) {
    case Kind::kSymbol:
      return true;
    case Kind::kVariable:
      return false;
    case Kind::kLiteral:
      return nested_->is_ground();
  }
  return false;
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ == Term::Kind::kLiteral) {
    return a.nested_ == b.nested_ || *a.nested_ == *b.nested_;
  }
  return a.id_ == b.id_;
}

bool operator<(const Term& a, const Term& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_;
  if (a.kind_ == Term::Kind::kLiteral) return *a.nested_ < *b.nested_;
  return a.id_ < b.id_;
}

bool Literal::is_ground() const {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

SymbolId intends_predicate() {
  static const SymbolId id = intern("intends");
  return id;
}

bool Literal::is_intends() const { return predicate == intends_predicate(); }

Literal Literal::negated() const {
  Literal out = *this;
  out.positive = !positive;
  return out;
}

bool operator==(const Literal& a, const Literal& b) {
  return a.predicate == b.predicate && a.positive == b.positive && a.args == b.args;
}

bool operator<(const Literal& a, const Literal& b) {
  if (a.predicate != b.predicate) return a.predicate < b.predicate;
  if (a.positive != b.positive) return a.positive < b.positive;
  return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(),
                                      b.args.end());
}

std::string to_string(const Term& term) {
  if (term.is_literal()) return to_string(term.nested());
  return symbol_name(term.id());
}

std::string to_string(const Literal& literal) {
  std::string body = "(" + symbol_name(literal.predicate);
  for (const auto& arg : literal.args) {
    body += ' ';
    body += to_string(arg);
  }
  body += ')';
  if (literal.positive) return body;
  return "(not " + body + ")";
}

Literal make_intends(SymbolId character, const Literal& goal) {
  return Literal(intends_predicate(), {Term::symbol(character), Term::literal(goal)});
}

void collect_variables(const Literal& literal, std::vector<SymbolId>& out) {
  for (const auto& arg : literal.args) {
    if (arg.is_variable()) {
      if (std::find(out.begin(), out.end(), arg.id()) == out.end()) out.push_back(arg.id());
    } else if (arg.is_literal()) {
      collect_variables(arg.nested(), out);
    }
  }
}

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_term(const Term& t);

std::size_t hash_literal(const Literal& l) {
  std::size_t h = mix(l.predicate, l.positive ? 1 : 2);
  for (const auto& a : l.args) h = mix(h, hash_term(a));
  return h;
}

std::size_t hash_term(const Term& t) {
  if (t.is_literal()) return mix(3, hash_literal(t.nested()));
  return mix(static_cast<std::size_t>(t.kind()), t.id());
}

}  // namespace

std::size_t LiteralHash::operator()(const Literal& literal) const { return hash_literal(literal); }

}  // namespace fabula
