#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <vector>

#include "loopalg/core.hpp"
#include "loopalg/properties.hpp"
#include "loopalg/search.hpp"
#include "oracles.hpp"

using namespace loopalg;

namespace {

std::vector<std::vector<int>> collect(const SearchSpec& spec) {
  std::vector<std::vector<int>> out;
  enumerate_loops(spec, [&](const LoopTable& L) {
    out.push_back(L.cells());
    return true;
  });
  return out;
}

}  // namespace

TEST_CASE("unconstrained enumeration equals the naive oracle") {
  for (int n = 1; n <= 5; ++n) {
    SearchSpec spec;
    spec.order = n;
    auto got = collect(spec);
    auto want = oracles::naive_reduced_loops(n);
    CHECK(got.size() == want.size());
    CHECK(std::set<std::vector<int>>(got.begin(), got.end()) ==
          std::set<std::vector<int>>(want.begin(), want.end()));
  }
  SearchSpec spec4;
  spec4.order = 4;
  CHECK(count_models(spec4) == 4);
  SearchSpec spec5;
  spec5.order = 5;
  CHECK(count_models(spec5) == 56);
}

TEST_CASE("order 6 count is reproduced with propagation off") {
  SearchSpec on;
  on.order = 6;
  SearchSpec off = on;
  off.incremental = false;
  CHECK(count_models(on) == 9408);
  CHECK(count_models(off) == 9408);
}

TEST_CASE("enumeration is deterministic") {
  SearchSpec spec;
  spec.order = 5;
  add_constraint(spec, "inverse_property", true);
  auto first = collect(spec);
  auto second = collect(spec);
  CHECK(first == second);
  CHECK_FALSE(first.empty());
}

TEST_CASE("pruning is safe: incremental and post-hoc runs emit the same set") {
  std::vector<SearchSpec> specs;
  {
    SearchSpec s;
    s.order = 5;
    add_constraint(s, "inverse_property", true);
    specs.push_back(s);
  }
  {
    SearchSpec s;
    s.order = 5;
    add_constraint(s, "left_alternative", true);
    add_constraint(s, "commutative", false);
    specs.push_back(s);
  }
  {
    SearchSpec s;
    s.order = 6;
    add_constraint(s, "moufang", true);
    specs.push_back(s);
  }
  {
    SearchSpec s;
    s.order = 5;
    add_constraint(s, "x*(y\\x) = y", true);  // an arbitrary 2-variable identity
    specs.push_back(s);
  }
  for (SearchSpec& s : specs) {
    s.incremental = true;
    auto with = collect(s);
    s.incremental = false;
    auto without = collect(s);
    CHECK(with == without);
  }
}

TEST_CASE("required structural properties hold on every emitted model") {
  SearchSpec spec;
  spec.order = 6;
  add_constraint(spec, "diassociative", true);
  add_constraint(spec, "a_loop", true);
  enumerate_loops(spec, [&](const LoopTable& L) {
    CHECK(is_diassociative(L));
    CHECK(is_a_loop(L));
    CHECK(is_moufang(L));  // Theorem 1 at order 6
    return true;
  });
}

TEST_CASE("theorem 1 refutation search finds nothing up to order 6") {
  for (int n = 1; n <= 6; ++n) {
    SearchSpec spec;
    spec.order = n;
    add_constraint(spec, "diassociative", true);
    add_constraint(spec, "a_loop", true);
    add_constraint(spec, "moufang", false);
    CHECK(count_models(spec) == 0);
  }
}

TEST_CASE("implied pruning equations hold on models of their property") {
  // Every equation attached to a required structural property must be a
  // consequence of it, or pruning would be unsound.
  for (const auto& [prop, check] : structural_properties()) {
    auto eqs = implied_pruning_equations(prop);
    if (eqs.empty()) continue;
    SearchSpec spec;
    spec.order = 6;
    add_constraint(spec, prop, true);
    spec.incremental = false;  // collect via post-hoc filtering only
    int seen = 0;
    enumerate_loops(spec, [&](const LoopTable& L) {
      for (const auto& [name, eq] : eqs) {
        CAPTURE(prop, name);
        CHECK(holds(L, eq));
      }
      return ++seen < 50;  // a sample is enough
    });
  }
}

TEST_CASE("first mode stops at the lexicographically least model") {
  SearchSpec spec;
  spec.order = 5;
  SearchStats stats;
  auto first = find_first(spec, &stats);
  REQUIRE(first.has_value());
  auto all = oracles::naive_reduced_loops(5);
  CHECK(first->cells() == all.front());

  // Nothing to find: order 4 nonassociative loops do not exist.
  SearchSpec no;
  no.order = 4;
  add_constraint(no, "group", false);
  CHECK_FALSE(find_first(no).has_value());
  // ... but the smallest nonassociative loop has order 5.
  SearchSpec yes;
  yes.order = 5;
  add_constraint(yes, "group", false);
  auto small = find_first(yes);
  REQUIRE(small.has_value());
  CHECK_FALSE(is_group(*small));
}

TEST_CASE("search spec files parse") {
  SearchSpec spec = parse_search_spec(
      "# theorem 1 refutation\n"
      "order: 5\n"
      "require: diassociative\n"
      "require: a_loop\n"
      "forbid: moufang\n"
      "mode: count\n"
      "iso_reject: true\n");
  CHECK(spec.order == 5);
  CHECK(spec.require_names == std::vector<std::string>{"diassociative", "a_loop"});
  CHECK(spec.forbid_names == std::vector<std::string>{"moufang"});
  CHECK(spec.mode == SearchSpec::Mode::Count);
  CHECK(spec.iso_reject);
  CHECK_THROWS_AS(parse_search_spec("order: 5\nbogus: 3\n"), parse_error);
  CHECK_THROWS_AS(parse_search_spec("require: moufang\n"), parse_error);
}

TEST_CASE("order caps are enforced") {
  SearchSpec spec;
  spec.order = 11;
  CHECK_THROWS_WITH(count_models(spec), "order cap exceeded (cap 10)");
  SearchSpec iso;
  iso.order = 9;
  iso.iso_reject = true;
  CHECK_THROWS_WITH(count_models(iso), "canonicalization cap");
}

TEST_CASE("isomorphism testing") {
  CHECK(are_isomorphic(cyclic_group(4), cyclic_group(4)));
  CHECK_FALSE(are_isomorphic(cyclic_group(4), klein_four()));
  CHECK(are_isomorphic(direct_product(cyclic_group(2), cyclic_group(3)),
                       cyclic_group(6)));
  CHECK_FALSE(are_isomorphic(cyclic_group(6), s3()));
  CHECK_THROWS_WITH(are_isomorphic(cyclic_group(3), cyclic_group(4)),
                    "order mismatch");

  // A scrambled relabeling of S3 stays isomorphic to S3.
  std::vector<int> sigma{3, 0, 5, 1, 4, 2};
  std::vector<int> cells(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      cells[static_cast<size_t>(sigma[a]) * 6 + sigma[b]] = sigma[s3().mul(a, b)];
  LoopTable scrambled = validate_loop(cells, 6);
  CHECK(are_isomorphic(scrambled, s3()));
  CHECK(canonical_form(scrambled) == canonical_form(s3()));
}

TEST_CASE("canonical_form is a canonical invariant") {
  LoopTable Z6 = cyclic_group(6);
  LoopTable c = canonical_form(Z6);
  CHECK(canonical_form(c) == c);
  CHECK(are_isomorphic(c, Z6));
  CHECK_THROWS_WITH(canonical_form(cyclic_group(9)), "canonicalization cap");
}

TEST_CASE("exactly 6 loops of order 5 up to isomorphism") {
  SearchSpec spec;
  spec.order = 5;
  spec.iso_reject = true;
  SearchStats stats;
  CHECK(count_models(spec, &stats) == 6);
  CHECK(stats.models == 56);
}

TEST_CASE("isotope sweep of a group sees only isomorphic copies") {
  LoopTable Z4 = cyclic_group(4);
  IsotopeSweepReport rep = isotope_sweep(Z4);
  CHECK(rep.base_moufang);
  CHECK(rep.base_a_loop);
  CHECK(rep.total == 16);
  CHECK(rep.moufang_count == 16);
  CHECK(rep.a_loop_count == 16);
  CHECK(rep.counterexamples.empty());
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(are_isomorphic(principal_isotope(Z4, a, b), Z4));
}
