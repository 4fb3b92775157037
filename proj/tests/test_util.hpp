#pragma once

#include <string>
#include <vector>

#include "safebribe/bribery.hpp"
#include "safebribe/election.hpp"
#include "safebribe/rng.hpp"

namespace testutil {

using namespace safebribe;

inline LinearOrder ord(std::vector<CandidateId> r) { return LinearOrder(std::move(r)); }

inline Profile prof(int m, const std::vector<std::vector<CandidateId>>& votes) {
    Profile p;
    p.m = m;
    for (size_t i = 0; i < votes.size(); ++i)
        p.votes.push_back({"v" + std::to_string(i + 1), LinearOrder(votes[i])});
    p.validate();
    return p;
}

inline TieBreakOrder tb(std::vector<CandidateId> r) { return {LinearOrder(std::move(r))}; }

inline TieBreakOrder identity_tb(int m) {
    std::vector<CandidateId> r(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) r[static_cast<size_t>(i)] = i;
    return {LinearOrder(std::move(r))};
}

inline LinearOrder random_order(Rng& rng, int m) {
    std::vector<CandidateId> r(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) r[static_cast<size_t>(i)] = i;
    rng.shuffle(r);
    return LinearOrder(std::move(r));
}

inline Profile random_profile(Rng& rng, int m, int n) {
    Profile p;
    p.m = m;
    for (int i = 0; i < n; ++i)
        p.votes.push_back({"v" + std::to_string(i + 1), random_order(rng, m)});
    return p;
}

// The 22-voter introductory plurality election: 10 voters for a, 8 for b,
// 4 for c, with the briber preferring c > a > b and asking 6 a-voters to put
// c on top.
inline BriberyInstance intro_instance() {
    const CandidateId a = 0, b = 1, c = 2;
    Election e;
    e.candidate_names = {"a", "b", "c"};
    e.tiebreak = tb({a, b, c});
    std::vector<std::vector<CandidateId>> votes;
    for (int i = 0; i < 10; ++i) votes.push_back({a, b, c});
    for (int i = 0; i < 8; ++i) votes.push_back({b, c, a});
    for (int i = 0; i < 4; ++i) votes.push_back({c, a, b});
    e.profile = prof(3, votes);

    Profile q = e.profile;
    for (int i = 0; i < 6; ++i) q.votes[static_cast<size_t>(i)].order = ord({c, a, b});

    BriberyInstance inst;
    inst.election = std::move(e);
    inst.rule = VotingRule::plurality();
    inst.briber = {ord({c, a, b}), c};
    inst.payload = IsSafeDollarPayload{std::move(q)};
    return inst;
}

}  // namespace testutil
