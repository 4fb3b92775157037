#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "safebribe/election.hpp"
#include "test_util.hpp"

using namespace safebribe;
using testutil::identity_tb;
using testutil::ord;
using testutil::prof;
using testutil::random_order;
using testutil::random_profile;
using testutil::tb;

namespace {
const CandidateId A = 0, B = 1, C = 2;

long long num(const Score& s) {
    REQUIRE(s.den == 1);
    return s.num;
}
}  // namespace

TEST_CASE("positional scores") {
    const Profile single = prof(3, {{A, B, C}});
    auto t = positional_scores(single, {1, 0, 0});
    CHECK(num(t[A]) == 1);
    CHECK(num(t[B]) == 0);
    CHECK(num(t[C]) == 0);

    const Profile two = prof(3, {{A, B, C}, {B, C, A}});
    t = positional_scores(two, {2, 1, 0});
    CHECK(num(t[A]) == 2);
    CHECK(num(t[B]) == 3);
    CHECK(num(t[C]) == 1);

    const Profile intro = testutil::intro_instance().election.profile;
    t = positional_scores(intro, {1, 0, 0});
    CHECK(num(t[A]) == 10);
    CHECK(num(t[B]) == 8);
    CHECK(num(t[C]) == 4);

    CHECK_THROWS_AS(positional_scores(single, {1, 0}), DimensionError);
    CHECK_THROWS_AS(positional_scores(single, {0, 1, 0}), RuleError);
    CHECK_THROWS_AS(positional_scores(single, {1, 1, 1}), RuleError);
}

TEST_CASE("pairwise margins") {
    const Profile single = prof(3, {{A, B, C}});
    CHECK(pairwise_margin(single, A, B) == 1);

    const Profile three = prof(3, {{A, B, C}, {A, C, B}, {B, C, A}});
    CHECK(pairwise_margin(three, A, B) == 1);

    const Profile two = prof(2, {{A, B}, {B, A}});
    CHECK(pairwise_margin(two, A, B) == 0);

    CHECK_THROWS_AS(pairwise_margin(single, A, A), PairError);
}

TEST_CASE("rule scores") {
    const Profile three = prof(3, {{A, B, C}, {A, C, B}, {B, C, A}});
    auto t = rule_scores(three, VotingRule::maximin());
    CHECK(num(t[A]) == 1);
    CHECK(num(t[B]) == -1);
    CHECK(num(t[C]) == -1);

    const Profile single = prof(3, {{A, B, C}});
    t = rule_scores(single, VotingRule::copeland());
    CHECK(num(t[A]) == 2);
    CHECK(num(t[B]) == 1);
    CHECK(num(t[C]) == 0);

    const Profile intro = testutil::intro_instance().election.profile;
    t = rule_scores(intro, VotingRule::plurality());
    CHECK(num(t[A]) == 10);
    CHECK(num(t[B]) == 8);
    CHECK(num(t[C]) == 4);

    // Fractional Copeland alpha stays exact.
    const Profile tied = prof(2, {{A, B}, {B, A}});
    t = rule_scores(tied, VotingRule::copeland(1, 2));
    CHECK(t[A] == t[B]);
    CHECK(t[A] == Score{1, 2});
}

TEST_CASE("bucklin rounds") {
    const Profile three = prof(3, {{A, B, C}, {B, A, C}, {A, C, B}});
    CHECK(bucklin_round(three, A) == 1);
    CHECK(bucklin_round(three, C) == 3);
    CHECK(bucklin_round(prof(2, {{A, B}}), A) == 1);
    CHECK(!bucklin_round(Profile{3, {}}, A).has_value());
}

TEST_CASE("winner determination") {
    const Profile intro = testutil::intro_instance().election.profile;
    CHECK(winner(intro, VotingRule::plurality(), tb({C, B, A})) == A);

    const Profile single = prof(3, {{A, B, C}});
    for (auto rule : {VotingRule::plurality(), VotingRule::approval(2), VotingRule::veto(),
                      VotingRule::kveto(2), VotingRule::borda(), VotingRule::bucklin(),
                      VotingRule::copeland(), VotingRule::maximin()})
        CHECK(winner(single, rule, tb({C, B, A})) == A);

    const Profile two = prof(3, {{A, B, C}, {B, C, A}});
    CHECK(winner(two, VotingRule::borda(), tb({A, B, C})) == B);

    CHECK_THROWS_AS(winner(Profile{3, {}}, VotingRule::plurality(), identity_tb(3)),
                    EmptyProfileError);
}

TEST_CASE("condorcet winner") {
    CHECK(condorcet_winner(prof(3, {{A, B, C}, {A, C, B}, {B, A, C}})) == A);
    CHECK(!condorcet_winner(prof(3, {{A, B, C}, {B, C, A}, {C, A, B}})).has_value());
    CHECK(condorcet_winner(prof(3, {{A, B, C}})) == A);
}

TEST_CASE("anonymity under vote permutations") {
    Rng rng(2024);
    const std::vector<VotingRule> rules = {
        VotingRule::plurality(), VotingRule::approval(2), VotingRule::veto(),
        VotingRule::kveto(2),    VotingRule::borda(),     VotingRule::bucklin(),
        VotingRule::copeland(),  VotingRule::maximin()};
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 3 + static_cast<int>(rng.below(2));
        const int n = 1 + static_cast<int>(rng.below(6));
        Profile p = random_profile(rng, m, n);
        const TieBreakOrder t{random_order(rng, m)};
        const VotingRule rule = rules[rng.below(rules.size())];
        const CandidateId before = winner(p, rule, t);
        rng.shuffle(p.votes);
        CHECK(winner(p, rule, t) == before);
    }
}

TEST_CASE("tie-break soundness") {
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 2 + static_cast<int>(rng.below(3));
        const int n = 1 + static_cast<int>(rng.below(5));
        const Profile p = random_profile(rng, m, n);
        const TieBreakOrder t{random_order(rng, m)};
        const VotingRule rule =
            rng.below(2) ? VotingRule::borda() : VotingRule::copeland(1, 2);
        const CandidateId win = winner(p, rule, t);
        const ScoreTable scores = rule_scores(p, rule);
        for (CandidateId cand = 0; cand < m; ++cand) {
            CHECK(scores[static_cast<size_t>(win)] >= scores[static_cast<size_t>(cand)]);
            if (cand != win && scores[static_cast<size_t>(cand)] == scores[static_cast<size_t>(win)])
                CHECK(t.beats(win, cand));
        }
    }
}

TEST_CASE("condorcet consistency of copeland and maximin") {
    Rng rng(99);
    int hits = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const int m = 3 + static_cast<int>(rng.below(2));
        const int n = 1 + static_cast<int>(rng.below(7));
        const Profile p = random_profile(rng, m, n);
        const auto cw = condorcet_winner(p);
        if (!cw) continue;
        ++hits;
        const TieBreakOrder t{random_order(rng, m)};
        CHECK(winner(p, VotingRule::copeland(), t) == *cw);
        CHECK(winner(p, VotingRule::copeland(1, 3), t) == *cw);
        CHECK(winner(p, VotingRule::maximin(), t) == *cw);
    }
    CHECK(hits > 50);
}

TEST_CASE("margin antisymmetry and parity") {
    Rng rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 2 + static_cast<int>(rng.below(3));
        const int n = 1 + static_cast<int>(rng.below(6));
        const Profile p = random_profile(rng, m, n);
        for (CandidateId a = 0; a < m; ++a)
            for (CandidateId b = a + 1; b < m; ++b) {
                const long long vs = pairwise_margin(p, a, b);
                CHECK(vs == -pairwise_margin(p, b, a));
                CHECK(std::abs(vs) <= n);
                CHECK((vs - n) % 2 == 0);
            }
    }
}

TEST_CASE("k-veto equals (m-k)-approval") {
    Rng rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 3 + static_cast<int>(rng.below(3));
        const int n = 1 + static_cast<int>(rng.below(6));
        const Profile p = random_profile(rng, m, n);
        const TieBreakOrder t{random_order(rng, m)};
        const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(m - 1)));
        CHECK(winner(p, VotingRule::kveto(k), t) == winner(p, VotingRule::approval(m - k), t));
    }
}

TEST_CASE("borda score equals sum of pairwise wins") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 2 + static_cast<int>(rng.below(4));
        const int n = 1 + static_cast<int>(rng.below(6));
        const Profile p = random_profile(rng, m, n);
        const ScoreTable borda = rule_scores(p, VotingRule::borda());
        for (CandidateId a = 0; a < m; ++a) {
            long long above = 0;
            for (CandidateId b = 0; b < m; ++b) {
                if (b == a) continue;
                for (const Vote& v : p.votes)
                    if (v.order.prefers(a, b)) ++above;
            }
            CHECK(num(borda[static_cast<size_t>(a)]) == above);
        }
    }
}

TEST_CASE("empty profiles are scored but have no winner") {
    const Profile empty{3, {}};
    const auto t = rule_scores(empty, VotingRule::borda());
    for (const Score& s : t) CHECK(s == Score{0, 1});
    const auto cop = rule_scores(empty, VotingRule::copeland(1, 2));
    for (const Score& s : cop) CHECK(s == Score{2, 2});
}
