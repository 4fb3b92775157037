#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "safebribe/errors.hpp"

namespace safebribe {

// Candidates are dense indices into an election's name table. All algorithms
// work on indices; names only matter for parsing and reports.
using CandidateId = int;

// A complete strict ranking, most preferred first.
struct LinearOrder {
    std::vector<CandidateId> ranking;

    LinearOrder() = default;
    explicit LinearOrder(std::vector<CandidateId> r) : ranking(std::move(r)) {}

    int size() const { return static_cast<int>(ranking.size()); }

    CandidateId top() const { return ranking.front(); }
    CandidateId last() const { return ranking.back(); }
    CandidateId at(int position) const { return ranking[static_cast<size_t>(position - 1)]; }

    // 1-based position of a candidate.
    int position_of(CandidateId c) const {
        for (int i = 0; i < size(); ++i)
            if (ranking[static_cast<size_t>(i)] == c) return i + 1;
        throw PairError("candidate " + std::to_string(c) + " not in order");
    }

    bool prefers(CandidateId a, CandidateId b) const { return position_of(a) < position_of(b); }

    bool is_permutation_of(int m) const {
        if (size() != m) return false;
        std::vector<char> seen(static_cast<size_t>(m), 0);
        for (CandidateId c : ranking) {
            if (c < 0 || c >= m || seen[static_cast<size_t>(c)]) return false;
            seen[static_cast<size_t>(c)] = 1;
        }
        return true;
    }

    bool operator==(const LinearOrder& o) const { return ranking == o.ranking; }
    bool operator!=(const LinearOrder& o) const { return !(*this == o); }
    bool operator<(const LinearOrder& o) const { return ranking < o.ranking; }
};

struct Vote {
    std::string voter;
    LinearOrder order;
};

// An n-voter profile over a fixed candidate set of size m. m is stored
// explicitly so empty profiles stay well-typed.
struct Profile {
    int m = 0;
    std::vector<Vote> votes;

    int n() const { return static_cast<int>(votes.size()); }

    const LinearOrder& order_of(int i) const { return votes[static_cast<size_t>(i)].order; }

    void validate() const {
        std::vector<std::string> ids;
        for (const Vote& v : votes) {
            if (!v.order.is_permutation_of(m))
                throw DimensionError("vote of " + v.voter + " is not a permutation of all " +
                                     std::to_string(m) + " candidates");
            ids.push_back(v.voter);
        }
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            throw VoterIdError("duplicate voter id");
    }

    int index_of_voter(const std::string& id) const {
        for (int i = 0; i < n(); ++i)
            if (votes[static_cast<size_t>(i)].voter == id) return i;
        throw VoterIdError("unknown voter id " + id);
    }
};

struct TieBreakOrder {
    LinearOrder order;

    // Smaller rank wins ties.
    int rank_of(CandidateId c) const { return order.position_of(c); }
    bool beats(CandidateId a, CandidateId b) const { return rank_of(a) < rank_of(b); }
};

enum class RuleKind {
    Plurality,
    KApproval,
    Veto,
    KVeto,
    Borda,
    SimplifiedBucklin,
    Copeland,
    Maximin,
};

struct VotingRule {
    RuleKind kind = RuleKind::Plurality;
    int k = 0;                 // KApproval / KVeto parameter
    long long alpha_num = 0;   // Copeland alpha, defaults to 0
    long long alpha_den = 1;

    static VotingRule plurality() { return {RuleKind::Plurality, 0, 0, 1}; }
    static VotingRule approval(int k) { return {RuleKind::KApproval, k, 0, 1}; }
    static VotingRule veto() { return {RuleKind::Veto, 0, 0, 1}; }
    static VotingRule kveto(int k) { return {RuleKind::KVeto, k, 0, 1}; }
    static VotingRule borda() { return {RuleKind::Borda, 0, 0, 1}; }
    static VotingRule bucklin() { return {RuleKind::SimplifiedBucklin, 0, 0, 1}; }
    static VotingRule copeland(long long num = 0, long long den = 1) {
        return {RuleKind::Copeland, 0, num, den};
    }
    static VotingRule maximin() { return {RuleKind::Maximin, 0, 0, 1}; }

    bool is_scoring_rule() const {
        switch (kind) {
            case RuleKind::Plurality:
            case RuleKind::KApproval:
            case RuleKind::Veto:
            case RuleKind::KVeto:
            case RuleKind::Borda:
                return true;
            default:
                return false;
        }
    }

    void validate(int m) const {
        if (kind == RuleKind::KApproval || kind == RuleKind::KVeto) {
            if (k < 1 || k > m - 1)
                throw RuleError("rule parameter k=" + std::to_string(k) +
                                " outside [1, m-1] for m=" + std::to_string(m));
        }
        if (kind == RuleKind::Copeland) {
            if (alpha_den <= 0 || alpha_num < 0 || alpha_num > alpha_den)
                throw RuleError("Copeland alpha must be a rational in [0,1]");
        }
    }
};

// Exact score value. den is 1 for every rule except Copeland with fractional
// alpha; comparisons cross-multiply so no floating point is involved.
struct Score {
    long long num = 0;
    long long den = 1;

    friend bool operator==(const Score& a, const Score& b) {
        return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<(const Score& a, const Score& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator!=(const Score& a, const Score& b) { return !(a == b); }
    friend bool operator>(const Score& a, const Score& b) { return b < a; }
    friend bool operator<=(const Score& a, const Score& b) { return !(b < a); }
    friend bool operator>=(const Score& a, const Score& b) { return !(a < b); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Scores indexed by CandidateId.
using ScoreTable = std::vector<Score>;

inline ScoreTable positional_scores(const Profile& profile, const std::vector<long long>& vec) {
    if (static_cast<int>(vec.size()) != profile.m)
        throw DimensionError("score vector length " + std::to_string(vec.size()) +
                             " does not match m=" + std::to_string(profile.m));
    for (size_t i = 1; i < vec.size(); ++i)
        if (vec[i] > vec[i - 1]) throw RuleError("score vector must be non-increasing");
    if (!vec.empty() && vec.front() <= vec.back())
        throw RuleError("score vector must have first entry > last entry");

    ScoreTable table(static_cast<size_t>(profile.m));
    for (const Vote& v : profile.votes)
        for (int pos = 0; pos < profile.m; ++pos)
            table[static_cast<size_t>(v.order.ranking[static_cast<size_t>(pos)])].num +=
                vec[static_cast<size_t>(pos)];
    return table;
}

// vs(a,b): #votes ranking a above b minus #votes ranking b above a.
inline long long pairwise_margin(const Profile& profile, CandidateId a, CandidateId b) {
    if (a == b) throw PairError("pairwise margin of a candidate against itself");
    long long margin = 0;
    for (const Vote& v : profile.votes) margin += v.order.prefers(a, b) ? 1 : -1;
    return margin;
}

// Smallest k such that strictly more than n/2 votes rank a within their top k
// positions; nullopt only when the profile is empty.
inline std::optional<int> bucklin_round(const Profile& profile, CandidateId a) {
    const int n = profile.n();
    if (n == 0) return std::nullopt;
    std::vector<int> at_position(static_cast<size_t>(profile.m) + 1, 0);
    for (const Vote& v : profile.votes) ++at_position[static_cast<size_t>(v.order.position_of(a))];
    long long cumulative = 0;
    for (int k = 1; k <= profile.m; ++k) {
        cumulative += at_position[static_cast<size_t>(k)];
        if (2 * cumulative > n) return k;
    }
    return std::nullopt;
}

namespace detail {

inline std::vector<long long> score_vector_for(const VotingRule& rule, int m) {
    std::vector<long long> vec(static_cast<size_t>(m), 0);
    switch (rule.kind) {
        case RuleKind::Plurality:
            vec[0] = 1;
            break;
        case RuleKind::KApproval:
            for (int i = 0; i < rule.k; ++i) vec[static_cast<size_t>(i)] = 1;
            break;
        case RuleKind::Veto:
            vec[static_cast<size_t>(m - 1)] = -1;
            break;
        case RuleKind::KVeto:
            for (int i = m - rule.k; i < m; ++i) vec[static_cast<size_t>(i)] = -1;
            break;
        case RuleKind::Borda:
            for (int i = 0; i < m; ++i) vec[static_cast<size_t>(i)] = m - 1 - i;
            break;
        default:
            throw RuleError("not a scoring rule");
    }
    return vec;
}

}  // namespace detail

inline ScoreTable rule_scores(const Profile& profile, const VotingRule& rule) {
    rule.validate(profile.m);
    const int m = profile.m;
    switch (rule.kind) {
        case RuleKind::Plurality:
        case RuleKind::KApproval:
        case RuleKind::Veto:
        case RuleKind::KVeto:
        case RuleKind::Borda:
            return positional_scores(profile, detail::score_vector_for(rule, m));
        case RuleKind::Copeland: {
            ScoreTable table(static_cast<size_t>(m));
            for (CandidateId a = 0; a < m; ++a) {
                long long wins = 0, ties = 0;
                for (CandidateId b = 0; b < m; ++b) {
                    if (a == b) continue;
                    long long vs = pairwise_margin(profile, a, b);
                    if (vs > 0)
                        ++wins;
                    else if (vs == 0)
                        ++ties;
                }
                table[static_cast<size_t>(a)] = {wins * rule.alpha_den + ties * rule.alpha_num,
                                                 rule.alpha_den};
            }
            return table;
        }
        case RuleKind::Maximin: {
            ScoreTable table(static_cast<size_t>(m));
            for (CandidateId a = 0; a < m; ++a) {
                long long best = profile.n();  // margins are bounded by n
                for (CandidateId b = 0; b < m; ++b)
                    if (b != a) best = std::min(best, pairwise_margin(profile, a, b));
                table[static_cast<size_t>(a)] = {best, 1};
            }
            return table;
        }
        case RuleKind::SimplifiedBucklin: {
            // Negated winning round, so the shared max-score winner path works
            // for every rule. An unreachable round (n = 0) maps below -m.
            ScoreTable table(static_cast<size_t>(m));
            for (CandidateId a = 0; a < m; ++a) {
                auto round = bucklin_round(profile, a);
                table[static_cast<size_t>(a)] = {round ? -static_cast<long long>(*round)
                                                       : -static_cast<long long>(m) - 1,
                                                 1};
            }
            return table;
        }
    }
    throw RuleError("unknown rule");
}

// Resolute winner under lexicographic tie-breaking.
inline CandidateId winner(const Profile& profile, const VotingRule& rule,
                          const TieBreakOrder& tiebreak) {
    if (profile.n() == 0) throw EmptyProfileError("winner of an empty election");
    const ScoreTable scores = rule_scores(profile, rule);
    CandidateId best = 0;
    for (CandidateId c = 1; c < profile.m; ++c) {
        const Score& sc = scores[static_cast<size_t>(c)];
        const Score& sb = scores[static_cast<size_t>(best)];
        if (sc > sb || (sc == sb && tiebreak.beats(c, best))) best = c;
    }
    return best;
}

inline std::optional<CandidateId> condorcet_winner(const Profile& profile) {
    for (CandidateId a = 0; a < profile.m; ++a) {
        bool wins_all = true;
        for (CandidateId b = 0; b < profile.m && wins_all; ++b)
            if (b != a && pairwise_margin(profile, a, b) <= 0) wins_all = false;
        if (wins_all) return a;
    }
    return std::nullopt;
}

}  // namespace safebribe
