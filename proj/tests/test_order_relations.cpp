#include <doctest.h>

#include "csa/error.hpp"
#include "csa/order_relations.hpp"
#include "support.hpp"

using namespace csa;
using namespace csa::order;
using csa::test::five;

namespace {

std::vector<std::string> names(const StrictRelation& rel, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(rel.universe()[i].id);
  return out;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("build_relation maps verdicts onto strict pairs") {
  const auto rel = test::example1();
  CHECK(rel.pair_count() == 10);
  CHECK(rel.prefers(2, 0));  // d3 > d1
  CHECK_FALSE(rel.prefers(0, 2));

  SUBCASE("empty judgments give the empty relation") {
    CHECK(build_relation(five(), {}).pair_count() == 0);
  }
  SUBCASE("less preferred is the converse") {
    const auto r = build_relation(five(), {{"d2", "d1", Verdict::LessPreferred}});
    CHECK(r.pairs() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
  }
  SUBCASE("indifferent contributes nothing") {
    CHECK(build_relation(five(), {{"d2", "d1", Verdict::Indifferent}}).pair_count() == 0);
  }
  SUBCASE("errors") {
    CHECK(code_of([] { build_relation(five(), {{"d1", "zz", Verdict::Preferred}}); }) ==
          ErrorCode::UnknownDisorder);
    CHECK(code_of([] { build_relation(five(), {{"d1", "d1", Verdict::Preferred}}); }) ==
          ErrorCode::SelfPair);
    CHECK(code_of([] {
            build_relation(five(), {{"d1", "d2", Verdict::Preferred},
                                    {"d2", "d1", Verdict::Indifferent}});
          }) == ErrorCode::DuplicatePair);
  }
}

TEST_CASE("unjudged pairs are reported separately from indifference") {
  const std::vector<PairJudgment> js{{"d1", "d2", Verdict::Indifferent},
                                     {"d3", "d1", Verdict::Preferred}};
  const auto open = unjudged_pairs(five(), js);
  CHECK(open.size() == 8);
  CHECK(std::find(open.begin(), open.end(), std::make_pair(std::string("d1"), std::string("d2"))) ==
        open.end());
  CHECK(open.front() == std::make_pair(std::string("d1"), std::string("d4")));
}

TEST_CASE("derive_indifference") {
  SUBCASE("example 2 has two comorbid pairs") {
    const auto ind = derive_indifference(test::example2());
    CHECK(ind.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {3, 4}});
  }
  SUBCASE("example 3") {
    const auto ind = derive_indifference(test::example3());
    CHECK(ind.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {2, 3}});
    CHECK(ind.contains(2, 1));
  }
  SUBCASE("a linear order has no indifferent pair") {
    const auto rel = test::example1();
    // Brute force over the 10 unordered pairs.
    int incomparable = 0;
    for (std::size_t x = 0; x < 5; ++x)
      for (std::size_t y = x + 1; y < 5; ++y)
        if (!rel.prefers(x, y) && !rel.prefers(y, x)) ++incomparable;
    CHECK(incomparable == 0);
    CHECK(derive_indifference(rel).pairs.empty());
  }
}

TEST_CASE("check_axiom") {
  CHECK(check_axiom(test::example1(), Axiom::Transitive).holds);

  const auto neg = check_axiom(test::example3(), Axiom::NegativeTransitive);
  CHECK_FALSE(neg.holds);
  REQUIRE_FALSE(neg.counterexamples.empty());
  CHECK(names(test::example3(), neg.counterexamples.front()) ==
        std::vector<std::string>{"d2", "d3", "d4"});
  for (const auto& w : neg.counterexamples)
    CHECK(violates(test::example3(), Axiom::NegativeTransitive, w));

  CHECK(check_axiom(StrictRelation(five()), Axiom::Asymmetric).holds);

  SUBCASE("counterexamples are capped") {
    std::mt19937 rng(7);
    const auto rel = test::random_relation(9, 0.5, rng);
    const auto r = check_axiom(rel, Axiom::Ferrers);
    CHECK_FALSE(r.holds);
    CHECK(r.counterexamples.size() == kCounterexampleCap);
    CHECK(check_axiom(rel, Axiom::Ferrers, 3).counterexamples.size() == 3);
  }
  SUBCASE("asymmetry witness") {
    StrictRelation rel(five());
    rel.add(0, 1);
    rel.add(1, 0);
    const auto r = check_axiom(rel, Axiom::Asymmetric);
    CHECK(r.counterexamples == std::vector<std::vector<std::size_t>>{{0, 1}});
  }
  SUBCASE("property names") {
    CHECK(parse_axiom("FERRERS") == Axiom::Ferrers);
    CHECK(code_of([] { parse_axiom("REFLEXIVE"); }) == ErrorCode::UnknownProperty);
  }
}

TEST_CASE("classify the worked examples") {
  CHECK(classify(test::example1()) == OrderClass::Linear);
  CHECK(classify(test::example2()) == OrderClass::Weak);
  CHECK(classify(test::example3()) == OrderClass::Semiorder);

  StrictRelation cyclic(five());
  cyclic.add(0, 1);
  cyclic.add(1, 2);
  cyclic.add(2, 0);
  CHECK(classify(cyclic) == OrderClass::Unclassified);
}

TEST_CASE("rank_linear") {
  const auto rel = test::example1();
  CHECK(names(rel, rank_linear(rel).chain) ==
        std::vector<std::string>{"d3", "d1", "d5", "d4", "d2"});

  const StrictRelation single(DisorderSet::from_ids({"only"}));
  CHECK(rank_linear(single).chain == std::vector<std::size_t>{0});

  std::mt19937 rng(42);
  std::vector<std::size_t> perm(7);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  CHECK(rank_linear(test::linear_from_permutation(perm)).chain == perm);

  CHECK(code_of([] { rank_linear(test::example2()); }) == ErrorCode::NotLinear);
}

TEST_CASE("rank_weak") {
  const auto rel = test::example2();
  const auto r = rank_weak(rel);
  CHECK(r.kind == RankingKind::RankedPartition);
  REQUIRE(r.blocks.size() == 3);
  CHECK(names(rel, r.blocks[0]) == std::vector<std::string>{"d1", "d2"});
  CHECK(names(rel, r.blocks[1]) == std::vector<std::string>{"d3"});
  CHECK(names(rel, r.blocks[2]) == std::vector<std::string>{"d4", "d5"});

  const auto linear = rank_weak(test::example1());
  CHECK(linear.blocks == std::vector<std::vector<std::size_t>>{{2}, {0}, {4}, {3}, {1}});

  const auto flat = rank_weak(StrictRelation(five()));
  CHECK(flat.blocks == std::vector<std::vector<std::size_t>>{{0, 1, 2, 3, 4}});

  CHECK(code_of([] { rank_weak(test::example3()); }) == ErrorCode::NotWeak);
}

TEST_CASE("semiorder chains of example 3") {
  const auto rel = test::example3();
  const auto r = enumerate_semiorder_chains(rel);
  REQUIRE(r.chains.size() == 3);
  std::vector<std::string> text;
  for (const auto& c : r.chains) text.push_back(io::render_chain(c, rel.universe()));
  CHECK(text == std::vector<std::string>{"d1 > d2 ~ d3 > d5", "d1 > d2 > d4 > d5",
                                         "d1 > d3 ~ d4 > d5"});
  for (const auto& c : r.chains) CHECK(is_valid_chain(rel, c));

  SUBCASE("double tie is not a valid chain") {
    const PresentationChain c{{0, 1, 2, 3, 4},
                              {Link::Strict, Link::Tie, Link::Tie, Link::Strict}};
    CHECK_FALSE(is_valid_chain(rel, c));
  }
  SUBCASE("non-adjacent indifferent pair is rejected") {
    const PresentationChain c{{0, 1, 3, 2, 4},
                              {Link::Strict, Link::Strict, Link::Tie, Link::Strict}};
    CHECK_FALSE(is_valid_chain(rel, c));
  }
  SUBCASE("matches the brute-force oracle") {
    CHECK(r.chains == test::brute_force_maximal_chains(rel));
  }
}

TEST_CASE("semiorder chains of a linear order collapse to one chain") {
  const auto rel = test::example1();
  const auto r = enumerate_semiorder_chains(rel);
  REQUIRE(r.chains.size() == 1);
  CHECK(r.chains[0].elements == rank_linear(rel).chain);
  CHECK(std::all_of(r.chains[0].links.begin(), r.chains[0].links.end(),
                    [](Link l) { return l == Link::Strict; }));
}

TEST_CASE("semiorder chains from unit-interval representations match brute force") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 3.5);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> util(6);
    for (auto& v : util) v = u(rng);
    const auto rel = test::semiorder_from_utilities(util);
    REQUIRE(is_semiorder(rel));
    const auto r = enumerate_semiorder_chains(rel);
    for (const auto& c : r.chains) CHECK(is_valid_chain(rel, c));
    CHECK(r.chains == test::brute_force_maximal_chains(rel));
    ++checked;
  }
  CHECK(checked == 60);
}

TEST_CASE("enumerate_semiorder_chains rejects non-semiorders") {
  StrictRelation rel(five());
  rel.add(0, 1);
  rel.add(2, 3);  // 2 + 2 structure breaks Ferrers
  CHECK_FALSE(is_semiorder(rel));
  CHECK(code_of([&] { enumerate_semiorder_chains(rel); }) == ErrorCode::NotSemiorder);
}

TEST_CASE("rank dispatches on class") {
  CHECK(rank(test::example1())->kind == RankingKind::Chain);
  CHECK(rank(test::example2())->kind == RankingKind::RankedPartition);
  CHECK(rank(test::example3())->kind == RankingKind::ChainSet);
  StrictRelation cyclic(five());
  cyclic.add(0, 1);
  cyclic.add(1, 0);
  CHECK_FALSE(rank(cyclic).has_value());
}
