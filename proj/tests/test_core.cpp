#include <random>

#include "doctest.h"
#include "fabula/core/bindings.hpp"
#include "fabula/core/ordering.hpp"
#include "fabula/core/plan.hpp"

using namespace fabula;

namespace {

Literal lit(const char* pred, std::initializer_list<Term> args, bool positive = true) {
  return Literal(intern(pred), std::vector<Term>(args), positive);
}
Term s(const char* name) { return Term::symbol(name); }
Term v(const char* name) { return Term::variable(name); }

Plan skeleton() {
  Plan p;
  auto init = std::make_shared<GroundAction>();
  auto goal = std::make_shared<GroundAction>();
  p.steps.push_back(std::make_shared<Step>(Step{kInitialStep, StepRole::kInitial, init}));
  p.steps.push_back(std::make_shared<Step>(Step{kGoalStep, StepRole::kGoal, goal}));
  p.ordering.add_step();
  p.ordering.add_step();
  p.ordering.add(kInitialStep, kGoalStep);
  return p;
}

}  // namespace

TEST_CASE("unify binds a single variable") {
  auto b = unify(lit("at", {v("?x"), s("castle")}), lit("at", {s("aladdin"), s("castle")}), Bindings{});
  REQUIRE(b.has_value());
  CHECK(b->resolve(v("?x")) == s("aladdin"));
  CHECK(b->codesignations().size() == 1);
}

TEST_CASE("unify fails on a symbol clash") {
  CHECK_FALSE(unify(lit("at", {s("aladdin"), s("castle")}), lit("at", {s("jasmine"), s("castle")}), Bindings{}));
}

TEST_CASE("unify fails on polarity, predicate, or arity mismatch") {
  CHECK_FALSE(unify(lit("alive", {s("genie")}), lit("alive", {s("genie")}, false), Bindings{}));
  CHECK_FALSE(unify(lit("alive", {s("genie")}), lit("dead", {s("genie")}), Bindings{}));
  CHECK_FALSE(unify(lit("at", {s("genie")}), lit("at", {s("genie"), s("lamp")}), Bindings{}));
}

TEST_CASE("unify binds a literal-valued parameter") {
  Literal goal = lit("has", {s("jafar"), s("lamp")});
  auto b = unify(lit("intends", {v("?knight"), v("?objective")}),
                 lit("intends", {s("aladdin"), Term::literal(goal)}), Bindings{});
  REQUIRE(b.has_value());
  CHECK(b->resolve(v("?knight")) == s("aladdin"));
  CHECK(b->resolve(v("?objective")) == Term::literal(goal));
  CHECK(to_string(b->apply(lit("intends", {v("?knight"), v("?objective")}))) ==
        "(intends aladdin (has jafar lamp))");
}

TEST_CASE("unify unifies nested literals structurally") {
  auto b = unify(lit("intends", {s("jafar"), Term::literal(lit("married-to", {s("jafar"), v("?y")}))}),
                 lit("intends", {s("jafar"), Term::literal(lit("married-to", {s("jafar"), s("jasmine")}))}),
                 Bindings{});
  REQUIRE(b.has_value());
  CHECK(b->resolve(v("?y")) == s("jasmine"));
}

TEST_CASE("unify respects non-codesignations and leaves the input untouched") {
  Bindings base;
  base.forbid(v("?x"), s("jafar"));
  CHECK_FALSE(unify(lit("king", {v("?x")}), lit("king", {s("jafar")}), base));
  auto ok = unify(lit("king", {v("?x")}), lit("king", {s("aladdin")}), base);
  CHECK(ok.has_value());
  CHECK(base.codesignations().empty());
}

TEST_CASE("unify is symmetric and idempotent") {
  std::vector<Literal> pool = {
      lit("at", {v("?a"), s("castle")}),   lit("at", {s("jafar"), v("?b")}), lit("at", {v("?a"), v("?b")}),
      lit("at", {s("jafar"), s("castle")}), lit("at", {s("genie"), s("lamp")}), lit("at", {v("?c"), v("?c")}),
  };
  for (const auto& a : pool) {
    for (const auto& b : pool) {
      auto ab = unify(a, b, Bindings{});
      auto ba = unify(b, a, Bindings{});
      CHECK(ab.has_value() == ba.has_value());
      if (!ab) continue;
      CHECK(ab->apply(a) == ab->apply(b));
      auto again = unify(a, b, *ab);
      REQUIRE(again.has_value());
      CHECK(again->codesignations().size() == ab->codesignations().size());
    }
  }
}

TEST_CASE("possibly-precedes") {
  Ordering o(5);
  o.add(0, 1);
  for (StepId s2 = 2; s2 < 5; ++s2) {
    o.add(0, s2);
    o.add(s2, 1);
  }
  CHECK(o.possibly_precedes(0, 3));
  CHECK_FALSE(o.possibly_precedes(3, 3));
  o.add(2, 3);
  o.add(3, 4);
  // 4 after 2 through 3, so 4 cannot also come first.
  CHECK_FALSE(o.possibly_precedes(4, 2));
  CHECK(o.possibly_precedes(2, 4));
  CHECK_THROWS_AS(o.possibly_precedes(0, 9), std::out_of_range);
}

TEST_CASE("incremental closure matches a closure recomputed from scratch") {
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    const int n = 3 + round % 70;  // crosses the 64-bit word boundary
    Ordering o(static_cast<std::size_t>(n));
    std::vector<std::pair<int, int>> added;
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < n * 2; ++k) {
      int a = pick(rng);
      int b = pick(rng);
      if (a >= b) continue;  // stays acyclic
      o.add(a, b);
      added.emplace_back(a, b);
    }
    std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (auto [a, b] : added) reach[a][b] = true;
    for (int m = 0; m < n; ++m)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (reach[a][m] && reach[m][b]) reach[a][b] = true;
    bool same = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) same = same && (reach[a][b] == o.precedes(a, b));
    CHECK(same);
    CHECK(o.consistent());
  }
}

TEST_CASE("consistent plans") {
  Plan p = skeleton();
  CHECK(consistent(p));

  Plan cyclic = skeleton();
  cyclic.ordering.add_step();
  cyclic.ordering.add_step();
  cyclic.ordering.add(2, 3);
  CHECK_FALSE(cyclic.ordering.add(3, 2));
  CHECK_FALSE(consistent(cyclic));

  Plan clash = skeleton();
  clash.bindings.assign(intern("?x"), s("jafar"));
  clash.bindings.forbid(v("?x"), s("jafar"));
  CHECK_FALSE(consistent(clash));
}

TEST_CASE("canonical literal text") {
  CHECK(to_string(lit("alive", {s("genie")}, false)) == "(not (alive genie))");
  CHECK(to_string(make_intends(intern("aladdin"), lit("alive", {s("genie")}, false))) ==
        "(intends aladdin (not (alive genie)))");
}
