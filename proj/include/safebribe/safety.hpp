#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "safebribe/bribery.hpp"
#include "safebribe/flow.hpp"

namespace safebribe {

struct ComplyWitness {
    std::vector<int> comply;  // voter indices casting the bribed vote
};
struct SubShiftWitness {
    ShiftVector shifts;
};
using Witness = std::variant<ComplyWitness, SubShiftWitness>;

struct NotSuccessful {
    CandidateId actual_winner;
};
struct Unsafe {
    Witness witness;
    CandidateId bad_winner;
};

struct SafetyVerdict {
    bool safe_and_successful = false;
    std::optional<std::variant<NotSuccessful, Unsafe>> failure;
    std::string method;

    bool unsafe() const { return failure && std::holds_alternative<Unsafe>(*failure); }
    bool not_successful() const {
        return failure && std::holds_alternative<NotSuccessful>(*failure);
    }
    const Unsafe& unsafe_failure() const { return std::get<Unsafe>(*failure); }
    const NotSuccessful& not_successful_failure() const {
        return std::get<NotSuccessful>(*failure);
    }

    static SafetyVerdict safe(std::string method) { return {true, std::nullopt, std::move(method)}; }
    static SafetyVerdict failed_success(CandidateId actual, std::string method) {
        return {false, NotSuccessful{actual}, std::move(method)};
    }
    static SafetyVerdict found_unsafe(Witness w, CandidateId bad, std::string method) {
        return {false, Unsafe{std::move(w), bad}, std::move(method)};
    }
};

struct OracleLimits {
    unsigned long long max_dollar_outcomes = 1ull << 20;
    unsigned long long max_shift_outcomes = 1000000;
    bool force = false;
};

struct XpLimits {
    int max_candidates = 4;
};

namespace detail {

// Position tallies plus the pairwise margin matrix, maintained incrementally
// so repeated winner determinations over related profiles stay cheap.
class TallyEvaluator {
public:
    explicit TallyEvaluator(int m)
        : m_(m),
          counts_(static_cast<size_t>(m) * static_cast<size_t>(m), 0),
          margins_(static_cast<size_t>(m) * static_cast<size_t>(m), 0),
          pos_buf_(static_cast<size_t>(m), 0) {}

    void add_order(const LinearOrder& o) { apply(o, +1); }
    void remove_order(const LinearOrder& o) { apply(o, -1); }

    long long n() const { return n_; }

    // counts[c][p]: number of votes ranking c at 1-based position p+1.
    long long count_at(CandidateId c, int pos0) const {
        return counts_[static_cast<size_t>(c) * static_cast<size_t>(m_) +
                       static_cast<size_t>(pos0)];
    }
    long long margin(CandidateId a, CandidateId b) const {
        return margins_[static_cast<size_t>(a) * static_cast<size_t>(m_) +
                        static_cast<size_t>(b)];
    }

    // Number of votes ranking c within the top `round` positions.
    long long top_count(CandidateId c, int round) const {
        long long total = 0;
        for (int p = 0; p < round; ++p) total += count_at(c, p);
        return total;
    }

    void scores_into(const VotingRule& rule, std::vector<Score>& out) const {
        out.assign(static_cast<size_t>(m_), Score{});
        if (rule.is_scoring_rule()) {
            const auto vec = score_vector_for(rule, m_);
            for (CandidateId c = 0; c < m_; ++c) {
                long long s = 0;
                for (int p = 0; p < m_; ++p) s += vec[static_cast<size_t>(p)] * count_at(c, p);
                out[static_cast<size_t>(c)] = {s, 1};
            }
            return;
        }
        if (rule.kind == RuleKind::Copeland) {
            for (CandidateId a = 0; a < m_; ++a) {
                long long wins = 0, ties = 0;
                for (CandidateId b = 0; b < m_; ++b) {
                    if (b == a) continue;
                    const long long vs = margin(a, b);
                    if (vs > 0)
                        ++wins;
                    else if (vs == 0)
                        ++ties;
                }
                out[static_cast<size_t>(a)] = {wins * rule.alpha_den + ties * rule.alpha_num,
                                               rule.alpha_den};
            }
            return;
        }
        if (rule.kind == RuleKind::Maximin) {
            for (CandidateId a = 0; a < m_; ++a) {
                long long best = n_;
                for (CandidateId b = 0; b < m_; ++b)
                    if (b != a) best = std::min(best, margin(a, b));
                out[static_cast<size_t>(a)] = {best, 1};
            }
            return;
        }
        // Simplified Bucklin: negated winning round.
        for (CandidateId a = 0; a < m_; ++a) {
            long long cumulative = 0;
            long long round = -static_cast<long long>(m_) - 1;
            for (int p = 0; p < m_; ++p) {
                cumulative += count_at(a, p);
                if (2 * cumulative > n_) {
                    round = -(p + 1);
                    break;
                }
            }
            out[static_cast<size_t>(a)] = {round, 1};
        }
    }

    CandidateId winner(const VotingRule& rule, const TieBreakOrder& tiebreak) const {
        scores_into(rule, score_buf_);
        CandidateId best = 0;
        for (CandidateId c = 1; c < m_; ++c) {
            const Score& sc = score_buf_[static_cast<size_t>(c)];
            const Score& sb = score_buf_[static_cast<size_t>(best)];
            if (sc > sb || (sc == sb && tiebreak.beats(c, best))) best = c;
        }
        return best;
    }

private:
    void apply(const LinearOrder& o, long long sign) {
        for (int p = 0; p < m_; ++p)
            pos_buf_[static_cast<size_t>(o.ranking[static_cast<size_t>(p)])] = p;
        for (CandidateId c = 0; c < m_; ++c) {
            counts_[static_cast<size_t>(c) * static_cast<size_t>(m_) +
                    static_cast<size_t>(pos_buf_[static_cast<size_t>(c)])] += sign;
        }
        for (CandidateId a = 0; a < m_; ++a)
            for (CandidateId b = a + 1; b < m_; ++b) {
                const long long d =
                    pos_buf_[static_cast<size_t>(a)] < pos_buf_[static_cast<size_t>(b)] ? sign
                                                                                        : -sign;
                margins_[static_cast<size_t>(a) * static_cast<size_t>(m_) +
                         static_cast<size_t>(b)] += d;
                margins_[static_cast<size_t>(b) * static_cast<size_t>(m_) +
                         static_cast<size_t>(a)] -= d;
            }
        n_ += sign;
    }

    int m_;
    long long n_ = 0;
    std::vector<long long> counts_;
    std::vector<long long> margins_;
    std::vector<int> pos_buf_;
    mutable std::vector<Score> score_buf_;
};

inline const IsSafeDollarPayload* dollar_payload(const BriberyInstance& inst) {
    return std::get_if<IsSafeDollarPayload>(&inst.payload);
}
inline const IsSafeShiftPayload* shift_payload(const BriberyInstance& inst) {
    return std::get_if<IsSafeShiftPayload>(&inst.payload);
}

}  // namespace detail

inline Profile full_compliance_profile(const BriberyInstance& inst) {
    if (const auto* d = detail::dollar_payload(inst)) return d->bribed_profile;
    if (const auto* s = detail::shift_payload(inst))
        return apply_shift(inst.profile(), inst.preferred(), s->shifts);
    throw VariantError("full compliance is defined for Is-Safe payloads only");
}

inline GoodBadPartition instance_partition(const BriberyInstance& inst) {
    return good_bad_partition(inst.profile(), inst.rule, inst.tiebreak(), inst.briber);
}

// Exhaustive decision straight from the safety definitions. Doubles as the
// fixed-parameter enumeration over all shift actions.
inline SafetyVerdict is_safe_oracle(const BriberyInstance& inst, const OracleLimits& limits = {}) {
    if (!inst.is_safe_variant()) throw VariantError("is_safe_oracle needs an Is-Safe payload");
    const Profile& p = inst.profile();
    const GoodBadPartition part = instance_partition(inst);
    const Profile full = full_compliance_profile(inst);
    const CandidateId full_winner = winner(full, inst.rule, inst.tiebreak());
    if (full_winner != inst.preferred())
        return SafetyVerdict::failed_success(full_winner, "oracle");

    NoncomplianceRange range = enumerate_noncompliance(inst);
    const unsigned long long guard =
        range.dollar_model() ? limits.max_dollar_outcomes : limits.max_shift_outcomes;
    if (!limits.force && range.count() > guard)
        throw ResourceLimitError("noncompliance space has " + std::to_string(range.count()) +
                                 " outcomes, above the guard of " + std::to_string(guard));

    detail::TallyEvaluator eval(p.m);
    for (const Vote& v : p.votes) eval.add_order(v.order);

    // Outcomes are visited in the range's lexicographic order; consecutive
    // indices differ only in a suffix of voters, so the tallies are patched
    // per changed voter instead of rebuilt.
    std::vector<LinearOrder> current;
    current.reserve(p.votes.size());
    for (const Vote& v : p.votes) current.push_back(v.order);

    const auto set_voter = [&](int voter, const LinearOrder& order) {
        if (current[static_cast<size_t>(voter)] == order) return;
        eval.remove_order(current[static_cast<size_t>(voter)]);
        eval.add_order(order);
        current[static_cast<size_t>(voter)] = order;
    };

    if (range.dollar_model()) {
        const auto& bribed = range.bribed();
        const size_t nb = bribed.size();
        const Profile& q = detail::dollar_payload(inst)->bribed_profile;
        for (unsigned long long k = 0;; ++k) {
            if (k > 0) {
                // Binary increment: flip the trailing run.
                unsigned long long changed = k ^ (k - 1);
                for (size_t j = 0; j < nb && (changed >> j); ++j) {
                    const int voter = bribed[nb - 1 - j];
                    const bool comply = (k >> j) & 1ull;
                    set_voter(voter, comply ? q.order_of(voter) : p.order_of(voter));
                }
            }
            const CandidateId x = eval.winner(inst.rule, inst.tiebreak());
            if (part.is_bad(x))
                return SafetyVerdict::found_unsafe(ComplyWitness{range.comply_set(k)}, x,
                                                   "oracle");
            if (k + 1 == range.count()) break;
        }
        return SafetyVerdict::safe("oracle");
    }

    const auto& s = detail::shift_payload(inst)->shifts;
    const int n = p.n();
    std::vector<int> digits(static_cast<size_t>(n), 0);
    for (unsigned long long k = 0;; ++k) {
        if (k > 0) {
            // Mixed-radix increment, last voter fastest.
            for (int j = n - 1; j >= 0; --j) {
                if (digits[static_cast<size_t>(j)] < s.shifts[static_cast<size_t>(j)]) {
                    ++digits[static_cast<size_t>(j)];
                    set_voter(j, shift_left(p.order_of(j), inst.preferred(),
                                            digits[static_cast<size_t>(j)]));
                    break;
                }
                digits[static_cast<size_t>(j)] = 0;
                set_voter(j, p.order_of(j));
            }
        }
        const CandidateId x = eval.winner(inst.rule, inst.tiebreak());
        if (part.is_bad(x)) {
            ShiftVector sub;
            sub.shifts = digits;
            return SafetyVerdict::found_unsafe(SubShiftWitness{std::move(sub)}, x, "oracle");
        }
        if (k + 1 == range.count()) break;
    }
    return SafetyVerdict::safe("oracle");
}

// Top position for a scoring zone: the leftmost position whose occupant still
// collects the rule's non-penalized score.
inline int zone_boundary(const VotingRule& rule, int m) {
    switch (rule.kind) {
        case RuleKind::Plurality:
            return 1;
        case RuleKind::KApproval:
            return rule.k;
        case RuleKind::Veto:
            return m - 1;
        case RuleKind::KVeto:
            return m - rule.k;
        default:
            throw OperationError("rule has no approval/veto zone");
    }
}

// Compiles a Shift-Bribery-Is-Safe instance for a zone rule into the
// equivalent $Bribery-Is-Safe instance: the preferred candidate is placed just
// inside the approved zone (just outside the vetoed zone) whenever the shift
// allowance reaches it, otherwise the vote stays unchanged.
inline BriberyInstance shift_issafe_as_dollar(const BriberyInstance& inst) {
    const auto* sp = detail::shift_payload(inst);
    if (!sp) throw VariantError("shift_issafe_as_dollar needs an IsSafeShift payload");
    const int boundary = zone_boundary(inst.rule, inst.profile().m);
    const Profile& p = inst.profile();
    Profile q = p;
    for (int i = 0; i < p.n(); ++i) {
        const int pos = p.order_of(i).position_of(inst.preferred());
        const int si = sp->shifts.shifts[static_cast<size_t>(i)];
        if (pos > boundary && pos - si <= boundary)
            q.votes[static_cast<size_t>(i)].order =
                shift_left(p.order_of(i), inst.preferred(), pos - boundary);
    }
    BriberyInstance out = inst;
    out.payload = IsSafeDollarPayload{std::move(q)};
    return out;
}

// $Bribery-Is-Safe for plurality, one flow network per bad candidate b and
// per candidate final score of b. A bribed vote may point at b itself, so b's
// score is swept over its reachable range rather than pinned at n_b.
inline SafetyVerdict is_safe_plurality_flow(const BriberyInstance& inst) {
    if (inst.rule.kind != RuleKind::Plurality &&
        !(inst.rule.kind == RuleKind::KApproval && inst.rule.k == 1))
        throw OperationError("is_safe_plurality_flow requires the plurality rule");
    const auto* dp = detail::dollar_payload(inst);
    if (!dp) throw VariantError("is_safe_plurality_flow needs an IsSafeDollar payload");
    const Profile& p = inst.profile();
    const Profile& q = dp->bribed_profile;
    const GoodBadPartition part = instance_partition(inst);
    const CandidateId full_winner = winner(q, inst.rule, inst.tiebreak());
    if (full_winner != inst.preferred())
        return SafetyVerdict::failed_success(full_winner, "flow");

    const int n = p.n();
    for (CandidateId b : part.bad) {
        long long n_b = 0, boosters = 0;
        for (int i = 0; i < n; ++i) {
            if (p.order_of(i).top() == b)
                ++n_b;
            else if (q.order_of(i).top() == b)
                ++boosters;
        }
        for (long long lambda = n_b; lambda <= n_b + boosters; ++lambda) {
            bool possible = true;
            for (CandidateId a = 0; a < p.m && possible; ++a)
                if (a != b && lambda - 1 + (inst.tiebreak().beats(b, a) ? 1 : 0) < 0)
                    possible = false;
            if (!possible) continue;

            FlowNetwork net;
            const int s = net.add_node();
            std::vector<int> voter_node(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) voter_node[static_cast<size_t>(i)] = net.add_node();
            std::vector<int> cand_node(static_cast<size_t>(p.m));
            for (CandidateId a = 0; a < p.m; ++a) cand_node[static_cast<size_t>(a)] = net.add_node();
            const int t = net.add_node();
            net.source = s;
            net.sink = t;

            std::vector<int> q_arc(static_cast<size_t>(n), -1);
            for (int i = 0; i < n; ++i) {
                net.add_arc(s, voter_node[static_cast<size_t>(i)], 0, 1);
                const CandidateId tp = p.order_of(i).top();
                const CandidateId tq = q.order_of(i).top();
                if (tp == b) {
                    net.add_arc(voter_node[static_cast<size_t>(i)],
                                cand_node[static_cast<size_t>(b)], 0, 1);
                    continue;
                }
                net.add_arc(voter_node[static_cast<size_t>(i)], cand_node[static_cast<size_t>(tp)],
                            0, 1);
                if (tq != tp)
                    q_arc[static_cast<size_t>(i)] = net.add_arc(
                        voter_node[static_cast<size_t>(i)], cand_node[static_cast<size_t>(tq)], 0, 1);
            }
            for (CandidateId a = 0; a < p.m; ++a) {
                if (a == b)
                    net.add_arc(cand_node[static_cast<size_t>(a)], t, lambda, lambda);
                else
                    net.add_arc(cand_node[static_cast<size_t>(a)], t, 0,
                                lambda - 1 + (inst.tiebreak().beats(b, a) ? 1 : 0));
            }

            const auto flow = feasible_flow(net);
            if (!flow || flow->value != n) continue;

            std::vector<int> comply;
            for (int i = 0; i < n; ++i)
                if (q_arc[static_cast<size_t>(i)] >= 0 &&
                    flow->flow[static_cast<size_t>(q_arc[static_cast<size_t>(i)])] == 1 &&
                    p.order_of(i) != q.order_of(i))
                    comply.push_back(i);
            return SafetyVerdict::found_unsafe(ComplyWitness{std::move(comply)}, b, "flow");
        }
    }
    return SafetyVerdict::safe("flow");
}

// $Bribery-Is-Safe for veto: one demand network per bad candidate. Voters
// vetoing b in both votes are pinned to b; everyone else takes one of their
// two possible veto targets, with per-candidate veto demands from the
// tie-break against b.
inline SafetyVerdict is_safe_veto_flow(const BriberyInstance& inst) {
    if (inst.rule.kind != RuleKind::Veto &&
        !(inst.rule.kind == RuleKind::KVeto && inst.rule.k == 1))
        throw OperationError("is_safe_veto_flow requires the veto rule");
    const auto* dp = detail::dollar_payload(inst);
    if (!dp) throw VariantError("is_safe_veto_flow needs an IsSafeDollar payload");
    const Profile& p = inst.profile();
    const Profile& q = dp->bribed_profile;
    const GoodBadPartition part = instance_partition(inst);
    const CandidateId full_winner = winner(q, inst.rule, inst.tiebreak());
    if (full_winner != inst.preferred())
        return SafetyVerdict::failed_success(full_winner, "flow");

    const int n = p.n();
    for (CandidateId b : part.bad) {
        long long n_b = 0;
        for (int i = 0; i < n; ++i)
            if (p.order_of(i).last() == b && q.order_of(i).last() == b) ++n_b;

        FlowNetwork net;
        const int s = net.add_node();
        std::vector<int> voter_node(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) voter_node[static_cast<size_t>(i)] = net.add_node();
        std::vector<int> cand_node(static_cast<size_t>(p.m));
        for (CandidateId a = 0; a < p.m; ++a) cand_node[static_cast<size_t>(a)] = net.add_node();
        const int t = net.add_node();
        net.source = s;
        net.sink = t;

        std::vector<int> q_arc(static_cast<size_t>(n), -1);
        for (int i = 0; i < n; ++i) {
            net.add_arc(s, voter_node[static_cast<size_t>(i)], 0, 1);
            const CandidateId lp = p.order_of(i).last();
            const CandidateId lq = q.order_of(i).last();
            if (lp == b && lq == b) {
                net.add_arc(voter_node[static_cast<size_t>(i)], cand_node[static_cast<size_t>(b)],
                            0, 1);
                continue;
            }
            if (lp != b)
                net.add_arc(voter_node[static_cast<size_t>(i)], cand_node[static_cast<size_t>(lp)],
                            0, 1);
            if (lq != b && lq != lp)
                q_arc[static_cast<size_t>(i)] = net.add_arc(voter_node[static_cast<size_t>(i)],
                                                            cand_node[static_cast<size_t>(lq)], 0, 1);
        }
        for (CandidateId a = 0; a < p.m; ++a) {
            if (a == b)
                net.add_arc(cand_node[static_cast<size_t>(a)], t, n_b, kInfiniteCap);
            else
                net.add_arc(cand_node[static_cast<size_t>(a)], t,
                            n_b + (inst.tiebreak().beats(a, b) ? 1 : 0), kInfiniteCap);
        }

        const auto flow = feasible_flow(net);
        if (!flow || flow->value != n) continue;

        std::vector<int> comply;
        for (int i = 0; i < n; ++i) {
            if (p.order_of(i) == q.order_of(i)) continue;
            const CandidateId lp = p.order_of(i).last();
            const CandidateId lq = q.order_of(i).last();
            if (lp == b && lq == b) continue;  // pinned, counted as original vote
            if (lp == b && lq != b) {
                comply.push_back(i);  // the network moved this veto off b
                continue;
            }
            if (q_arc[static_cast<size_t>(i)] >= 0 &&
                flow->flow[static_cast<size_t>(q_arc[static_cast<size_t>(i)])] == 1)
                comply.push_back(i);
        }
        return SafetyVerdict::found_unsafe(ComplyWitness{std::move(comply)}, b, "flow");
    }
    return SafetyVerdict::safe("flow");
}

// Shift-Bribery-Is-Safe for the four zone rules, via the compiled $ instance.
// Plurality and veto reuse the paper networks directly; k-approval and k-veto
// use the zone form, where each voter that can reach the boundary carries one
// routable unit (the displaced boundary candidate or the preferred one).
inline SafetyVerdict is_safe_zone_flow(const BriberyInstance& inst) {
    const auto* sp = detail::shift_payload(inst);
    if (!sp) throw VariantError("is_safe_zone_flow needs an IsSafeShift payload");
    const Profile& p = inst.profile();
    const int m = p.m;
    const CandidateId c = inst.preferred();
    const int boundary = zone_boundary(inst.rule, m);

    const auto as_subshift = [&](const std::vector<int>& comply) {
        ShiftVector out;
        out.shifts.assign(static_cast<size_t>(p.n()), 0);
        for (int i : comply)
            out.shifts[static_cast<size_t>(i)] = p.order_of(i).position_of(c) - boundary;
        return out;
    };

    if (boundary == 1 || boundary == m - 1) {
        // Zone rules with a single approved or single vetoed position are
        // plurality/veto up to a uniform score shift; reuse those networks.
        BriberyInstance mapped = shift_issafe_as_dollar(inst);
        mapped.rule = boundary == 1 ? VotingRule::plurality() : VotingRule::veto();
        SafetyVerdict v =
            boundary == 1 ? is_safe_plurality_flow(mapped) : is_safe_veto_flow(mapped);
        if (v.unsafe()) {
            const auto& u = v.unsafe_failure();
            v.failure = Unsafe{SubShiftWitness{as_subshift(std::get<ComplyWitness>(u.witness).comply)},
                               u.bad_winner};
        }
        v.method = "flow";
        return v;
    }

    const GoodBadPartition part = instance_partition(inst);
    const Profile full = full_compliance_profile(inst);
    const CandidateId full_winner = winner(full, inst.rule, inst.tiebreak());
    if (full_winner != inst.preferred())
        return SafetyVerdict::failed_success(full_winner, "flow");

    const bool approval_type =
        inst.rule.kind == RuleKind::KApproval || inst.rule.kind == RuleKind::Plurality;
    // k-veto behaves as (m-k)-approval up to a uniform score shift, so both
    // branches below work with "zone membership" counts.
    std::vector<int> effective;          // voters whose shift reaches the boundary
    std::vector<CandidateId> displaced;  // per effective voter: the boundary occupant
    std::vector<long long> zone_count(static_cast<size_t>(m), 0);  // fixed zone memberships
    for (int i = 0; i < p.n(); ++i) {
        const LinearOrder& o = p.order_of(i);
        const int pos = o.position_of(c);
        const int si = sp->shifts.shifts[static_cast<size_t>(i)];
        const bool eff = pos > boundary && pos - si <= boundary;
        const int fixed_prefix = eff ? boundary - 1 : boundary;
        for (int q = 0; q < fixed_prefix; ++q)
            ++zone_count[static_cast<size_t>(o.ranking[static_cast<size_t>(q)])];
        if (eff) {
            effective.push_back(i);
            displaced.push_back(o.at(boundary));
        }
    }
    const int n_eff = static_cast<int>(effective.size());

    // Veto-type zone tallies: fixed vetoes with c's veto of each effective
    // voter carved out as that voter's routable unit.
    std::vector<long long> veto_count(static_cast<size_t>(m), 0);
    if (!approval_type) {
        for (int i = 0; i < p.n(); ++i) {
            const LinearOrder& o = p.order_of(i);
            const int pos = o.position_of(c);
            const int si = sp->shifts.shifts[static_cast<size_t>(i)];
            const bool eff = pos > boundary && pos - si <= boundary;
            for (int q = boundary; q < m; ++q) {
                const CandidateId a = o.ranking[static_cast<size_t>(q)];
                if (eff && a == c) continue;
                ++veto_count[static_cast<size_t>(a)];
            }
        }
    }

    for (CandidateId b : part.bad) {
        if (approval_type) {
            long long forced_b = 0;
            for (int e = 0; e < n_eff; ++e)
                if (displaced[static_cast<size_t>(e)] == b) ++forced_b;
            const long long s_max_b = zone_count[static_cast<size_t>(b)] + forced_b;
            bool possible = true;
            std::vector<long long> cap(static_cast<size_t>(m), 0);
            for (CandidateId a = 0; a < m && possible; ++a) {
                if (a == b) continue;
                cap[static_cast<size_t>(a)] = s_max_b - 1 +
                                              (inst.tiebreak().beats(b, a) ? 1 : 0) -
                                              zone_count[static_cast<size_t>(a)];
                if (cap[static_cast<size_t>(a)] < 0) possible = false;
            }
            if (!possible) continue;

            FlowNetwork net;
            const int s = net.add_node();
            std::vector<int> unit_node(static_cast<size_t>(n_eff));
            for (int e = 0; e < n_eff; ++e) unit_node[static_cast<size_t>(e)] = net.add_node();
            std::vector<int> cand_node(static_cast<size_t>(m));
            for (CandidateId a = 0; a < m; ++a) cand_node[static_cast<size_t>(a)] = net.add_node();
            const int t = net.add_node();
            net.source = s;
            net.sink = t;

            std::vector<int> comply_arc(static_cast<size_t>(n_eff), -1);
            for (int e = 0; e < n_eff; ++e) {
                net.add_arc(s, unit_node[static_cast<size_t>(e)], 0, 1);
                const CandidateId x = displaced[static_cast<size_t>(e)];
                net.add_arc(unit_node[static_cast<size_t>(e)], cand_node[static_cast<size_t>(x)], 0,
                            1);
                if (x != b)
                    comply_arc[static_cast<size_t>(e)] = net.add_arc(
                        unit_node[static_cast<size_t>(e)], cand_node[static_cast<size_t>(c)], 0, 1);
            }
            for (CandidateId a = 0; a < m; ++a)
                net.add_arc(cand_node[static_cast<size_t>(a)], t, 0,
                            a == b ? forced_b : cap[static_cast<size_t>(a)]);

            const auto flow = max_flow(net);
            if (flow.value != n_eff) continue;

            std::vector<int> comply;
            for (int e = 0; e < n_eff; ++e)
                if (comply_arc[static_cast<size_t>(e)] >= 0 &&
                    flow.flow[static_cast<size_t>(comply_arc[static_cast<size_t>(e)])] == 1)
                    comply.push_back(effective[static_cast<size_t>(e)]);
            return SafetyVerdict::found_unsafe(SubShiftWitness{as_subshift(comply)}, b, "flow");
        }

        // Veto-type zone: units are vetoes on c (non-compliance) or on the
        // displaced candidate (compliance); b keeps its fixed veto count.
        const long long v_b = veto_count[static_cast<size_t>(b)];

        FlowNetwork net;
        const int s = net.add_node();
        std::vector<int> unit_node(static_cast<size_t>(n_eff));
        for (int e = 0; e < n_eff; ++e) unit_node[static_cast<size_t>(e)] = net.add_node();
        std::vector<int> cand_node(static_cast<size_t>(m));
        for (CandidateId a = 0; a < m; ++a) cand_node[static_cast<size_t>(a)] = net.add_node();
        const int t = net.add_node();
        net.source = s;
        net.sink = t;

        std::vector<int> comply_arc(static_cast<size_t>(n_eff), -1);
        for (int e = 0; e < n_eff; ++e) {
            net.add_arc(s, unit_node[static_cast<size_t>(e)], 0, 1);
            net.add_arc(unit_node[static_cast<size_t>(e)], cand_node[static_cast<size_t>(c)], 0, 1);
            const CandidateId z = displaced[static_cast<size_t>(e)];
            if (z != b)
                comply_arc[static_cast<size_t>(e)] = net.add_arc(
                    unit_node[static_cast<size_t>(e)], cand_node[static_cast<size_t>(z)], 0, 1);
        }
        for (CandidateId a = 0; a < m; ++a) {
            if (a == b) {
                net.add_arc(cand_node[static_cast<size_t>(a)], t, 0, kInfiniteCap);
                continue;
            }
            const long long demand = std::max<long long>(
                0, v_b + (inst.tiebreak().beats(a, b) ? 1 : 0) - veto_count[static_cast<size_t>(a)]);
            net.add_arc(cand_node[static_cast<size_t>(a)], t, demand, kInfiniteCap);
        }

        const auto flow = feasible_flow(net);
        if (!flow || flow->value != n_eff) continue;

        std::vector<int> comply;
        for (int e = 0; e < n_eff; ++e)
            if (comply_arc[static_cast<size_t>(e)] >= 0 &&
                flow->flow[static_cast<size_t>(comply_arc[static_cast<size_t>(e)])] == 1)
                comply.push_back(effective[static_cast<size_t>(e)]);
        return SafetyVerdict::found_unsafe(SubShiftWitness{as_subshift(comply)}, b, "flow");
    }
    return SafetyVerdict::safe("flow");
}

// The Bucklin greedy needs the tie-break shape the proof fixes: c above w and
// every bad candidate below every good one.
inline bool bucklin_greedy_applicable(const BriberyInstance& inst, const GoodBadPartition& part) {
    const TieBreakOrder& t = inst.tiebreak();
    if (inst.preferred() != part.baseline_winner &&
        !t.beats(inst.preferred(), part.baseline_winner))
        return false;
    for (CandidateId g : part.good)
        for (CandidateId b : part.bad)
            if (t.beats(b, g)) return false;
    return true;
}

// Shift-Bribery-Is-Safe for simplified Bucklin: walk the voters once, letting
// the adversary shift c just above any round-l good candidate that still holds
// a majority; the bribery is unsafe exactly when all such goods can be pushed
// out while c stays below majority and some bad candidate keeps its round-l
// majority. Falls back to the oracle when the tie-break shape is not the one
// the proof assumes.
inline SafetyVerdict is_safe_bucklin_shift_greedy(const BriberyInstance& inst,
                                                  const OracleLimits& fallback_limits = {}) {
    if (inst.rule.kind != RuleKind::SimplifiedBucklin)
        throw OperationError("is_safe_bucklin_shift_greedy requires simplified Bucklin");
    const auto* sp = detail::shift_payload(inst);
    if (!sp) throw VariantError("is_safe_bucklin_shift_greedy needs an IsSafeShift payload");

    const Profile& p = inst.profile();
    const GoodBadPartition part = instance_partition(inst);
    if (!bucklin_greedy_applicable(inst, part)) {
        SafetyVerdict v = is_safe_oracle(inst, fallback_limits);
        v.method = "greedy:oracle-fallback";
        return v;
    }

    const Profile full = full_compliance_profile(inst);
    const CandidateId full_winner = winner(full, inst.rule, inst.tiebreak());
    if (full_winner != inst.preferred())
        return SafetyVerdict::failed_success(full_winner, "greedy");

    const CandidateId c = inst.preferred();
    const CandidateId w = part.baseline_winner;
    const int n = p.n();
    const int ell = *bucklin_round(p, w);
    const long long majority = n / 2;  // strict majority means count > majority

    std::vector<long long> sc(static_cast<size_t>(p.m), 0);
    for (CandidateId a = 0; a < p.m; ++a)
        for (const Vote& v : p.votes)
            if (v.order.position_of(a) <= ell) ++sc[static_cast<size_t>(a)];

    bool bad_majority = false;
    for (CandidateId b : part.bad)
        if (sc[static_cast<size_t>(b)] > majority) bad_majority = true;
    if (!bad_majority) return SafetyVerdict::safe("greedy");
    if (sc[static_cast<size_t>(c)] > majority) return SafetyVerdict::safe("greedy");

    Profile r = p;
    ShiftVector sub;
    sub.shifts.assign(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const LinearOrder& vote = r.order_of(i);
        const CandidateId a = vote.at(ell);
        if (part.is_bad(a) || a == c) continue;
        if (sc[static_cast<size_t>(a)] <= majority) continue;
        const int gap = vote.position_of(c) - ell;
        if (gap <= 0 || gap > sp->shifts.shifts[static_cast<size_t>(i)]) continue;
        r.votes[static_cast<size_t>(i)].order = shift_left(vote, c, gap);
        sub.shifts[static_cast<size_t>(i)] = gap;
        --sc[static_cast<size_t>(a)];
        ++sc[static_cast<size_t>(c)];
        if (sc[static_cast<size_t>(c)] > majority) return SafetyVerdict::safe("greedy");
    }

    for (CandidateId g : part.good)
        if (sc[static_cast<size_t>(g)] > majority) return SafetyVerdict::safe("greedy");

    const CandidateId x = winner(r, inst.rule, inst.tiebreak());
    return SafetyVerdict::found_unsafe(SubShiftWitness{std::move(sub)}, x, "greedy");
}

namespace detail {

inline std::vector<LinearOrder> all_orders(int m) {
    std::vector<CandidateId> perm(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) perm[static_cast<size_t>(i)] = i;
    std::vector<LinearOrder> out;
    do {
        out.emplace_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Bipartite b-matching between voters and vote slots, Kuhn's algorithm with
// slot capacities. Small and allocation-free across calls.
class SlotMatcher {
public:
    // compat[i] lists slot classes voter i may take; capacity per class.
    bool assign(const std::vector<std::vector<int>>& compat, const std::vector<long long>& capacity,
                std::vector<int>& voter_slot) {
        const int n = static_cast<int>(compat.size());
        const int slots = static_cast<int>(capacity.size());
        load_.assign(static_cast<size_t>(slots), 0);
        owners_.assign(static_cast<size_t>(slots), {});
        voter_slot.assign(static_cast<size_t>(n), -1);
        for (int i = 0; i < n; ++i) {
            visited_.assign(static_cast<size_t>(slots), 0);
            if (!try_place(i, compat, capacity, voter_slot)) return false;
        }
        return true;
    }

private:
    bool try_place(int voter, const std::vector<std::vector<int>>& compat,
                   const std::vector<long long>& capacity, std::vector<int>& voter_slot) {
        for (int slot : compat[static_cast<size_t>(voter)]) {
            if (visited_[static_cast<size_t>(slot)]) continue;
            visited_[static_cast<size_t>(slot)] = 1;
            if (load_[static_cast<size_t>(slot)] < capacity[static_cast<size_t>(slot)]) {
                ++load_[static_cast<size_t>(slot)];
                owners_[static_cast<size_t>(slot)].push_back(voter);
                voter_slot[static_cast<size_t>(voter)] = slot;
                return true;
            }
            for (size_t oi = 0; oi < owners_[static_cast<size_t>(slot)].size(); ++oi) {
                const int other = owners_[static_cast<size_t>(slot)][oi];
                if (try_place(other, compat, capacity, voter_slot)) {
                    owners_[static_cast<size_t>(slot)][oi] = voter;
                    voter_slot[static_cast<size_t>(voter)] = slot;
                    return true;
                }
            }
        }
        return false;
    }

    std::vector<long long> load_;
    std::vector<std::vector<int>> owners_;
    std::vector<char> visited_;
};

}  // namespace detail

// Constant-candidate Is-Safe for every anonymous and efficient rule: sweep all
// anonymous profiles whose winner is worse than w, and test with a unit
// matching whether the profile is reachable by partial compliance.
inline SafetyVerdict is_safe_anonymous_xp(const BriberyInstance& inst, const XpLimits& limits = {},
                                          const OracleLimits& oracle_limits = {}) {
    if (!inst.is_safe_variant())
        throw VariantError("is_safe_anonymous_xp needs an Is-Safe payload");
    const Profile& p = inst.profile();
    if (p.m > limits.max_candidates)
        throw ResourceLimitError("anonymous enumeration limited to m <= " +
                                 std::to_string(limits.max_candidates) + " candidates, given m = " +
                                 std::to_string(p.m));
    (void)oracle_limits;
    const GoodBadPartition part = instance_partition(inst);
    const Profile full = full_compliance_profile(inst);
    const CandidateId full_winner = winner(full, inst.rule, inst.tiebreak());
    if (full_winner != inst.preferred()) return SafetyVerdict::failed_success(full_winner, "xp");
    if (part.bad.empty()) return SafetyVerdict::safe("xp");

    const std::vector<LinearOrder> orders = detail::all_orders(p.m);
    const int num_orders = static_cast<int>(orders.size());
    const int n = p.n();

    std::map<std::vector<CandidateId>, int> order_index;
    for (int o = 0; o < num_orders; ++o) order_index[orders[static_cast<size_t>(o)].ranking] = o;

    // Per voter: compatible order ids and, for the shift model, the shift
    // amount realizing each of them.
    std::vector<std::vector<int>> compat(static_cast<size_t>(n));
    std::vector<std::vector<int>> compat_shift(static_cast<size_t>(n));
    if (const auto* dp = detail::dollar_payload(inst)) {
        for (int i = 0; i < n; ++i) {
            compat[static_cast<size_t>(i)].push_back(order_index.at(p.order_of(i).ranking));
            const int qo = order_index.at(dp->bribed_profile.order_of(i).ranking);
            if (qo != compat[static_cast<size_t>(i)].front())
                compat[static_cast<size_t>(i)].push_back(qo);
        }
    } else {
        const auto* sp = detail::shift_payload(inst);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= sp->shifts.shifts[static_cast<size_t>(i)]; ++j) {
                compat[static_cast<size_t>(i)].push_back(
                    order_index.at(shift_left(p.order_of(i), inst.preferred(), j).ranking));
                compat_shift[static_cast<size_t>(i)].push_back(j);
            }
        }
    }

    detail::TallyEvaluator eval(p.m);
    std::vector<long long> counts(static_cast<size_t>(num_orders), 0);
    detail::SlotMatcher matcher;
    std::vector<int> voter_slot;

    // Depth-first sweep over count vectors in ascending lexicographic order,
    // maintaining the tallies incrementally.
    std::optional<SafetyVerdict> found;
    auto recurse = [&](auto&& self, int depth, int remaining) -> void {
        if (found) return;
        if (depth == num_orders - 1) {
            for (int j = 0; j < remaining; ++j)
                eval.add_order(orders[static_cast<size_t>(depth)]);
            counts[static_cast<size_t>(depth)] = remaining;
            const CandidateId x = eval.winner(inst.rule, inst.tiebreak());
            if (part.is_bad(x) && matcher.assign(compat, counts, voter_slot)) {
                if (detail::dollar_payload(inst)) {
                    std::vector<int> comply;
                    const Profile& q = detail::dollar_payload(inst)->bribed_profile;
                    for (int i = 0; i < n; ++i) {
                        const int slot = voter_slot[static_cast<size_t>(i)];
                        if (orders[static_cast<size_t>(slot)] == q.order_of(i) &&
                            q.order_of(i) != p.order_of(i))
                            comply.push_back(i);
                    }
                    found = SafetyVerdict::found_unsafe(ComplyWitness{std::move(comply)}, x, "xp");
                } else {
                    ShiftVector sub;
                    sub.shifts.assign(static_cast<size_t>(n), 0);
                    for (int i = 0; i < n; ++i) {
                        const int slot = voter_slot[static_cast<size_t>(i)];
                        for (size_t j = 0; j < compat[static_cast<size_t>(i)].size(); ++j)
                            if (compat[static_cast<size_t>(i)][j] == slot) {
                                sub.shifts[static_cast<size_t>(i)] =
                                    compat_shift[static_cast<size_t>(i)][j];
                                break;
                            }
                    }
                    found = SafetyVerdict::found_unsafe(SubShiftWitness{std::move(sub)}, x, "xp");
                }
            }
            for (int j = 0; j < remaining; ++j)
                eval.remove_order(orders[static_cast<size_t>(depth)]);
            counts[static_cast<size_t>(depth)] = 0;
            return;
        }
        for (int cnt = 0; cnt <= remaining && !found; ++cnt) {
            if (cnt > 0) eval.add_order(orders[static_cast<size_t>(depth)]);
            counts[static_cast<size_t>(depth)] = cnt;
            self(self, depth + 1, remaining - cnt);
        }
        for (int j = 0; j < counts[static_cast<size_t>(depth)]; ++j)
            eval.remove_order(orders[static_cast<size_t>(depth)]);
        counts[static_cast<size_t>(depth)] = 0;
    };
    recurse(recurse, 0, n);
    if (found) return *found;
    return SafetyVerdict::safe("xp");
}

inline unsigned long long anonymous_profile_count(int m, int n) {
    // C(m! + n - 1, m! - 1), saturating.
    unsigned long long fact = 1;
    for (int i = 2; i <= m; ++i) fact *= static_cast<unsigned long long>(i);
    long double approx = 1.0L;
    unsigned long long exact = 1;
    const unsigned long long kTop = n + fact - 1;
    for (unsigned long long i = 1; i <= static_cast<unsigned long long>(n); ++i) {
        approx *= static_cast<long double>(kTop - i + 1) / static_cast<long double>(i);
        if (approx > 1e18L) return ~0ull;
        exact = exact * (kTop - i + 1) / i;
    }
    return exact;
}

// Chooses the fastest proven method: the dedicated polynomial checker when one
// exists for the rule/payload pair, otherwise the cheaper of the exhaustive
// oracle and the anonymous-profile sweep.
inline SafetyVerdict is_safe_auto(const BriberyInstance& inst, const OracleLimits& ol = {},
                                  const XpLimits& xl = {}) {
    if (!inst.is_safe_variant()) throw VariantError("is_safe_auto needs an Is-Safe payload");
    const RuleKind kind = inst.rule.kind;
    const bool dollar = inst.is_dollar_is_safe();
    if (dollar) {
        if (kind == RuleKind::Plurality || (kind == RuleKind::KApproval && inst.rule.k == 1))
            return is_safe_plurality_flow(inst);
        if (kind == RuleKind::Veto || (kind == RuleKind::KVeto && inst.rule.k == 1))
            return is_safe_veto_flow(inst);
    } else {
        if (kind == RuleKind::Plurality || kind == RuleKind::KApproval ||
            kind == RuleKind::Veto || kind == RuleKind::KVeto)
            return is_safe_zone_flow(inst);
        if (kind == RuleKind::SimplifiedBucklin) return is_safe_bucklin_shift_greedy(inst, ol);
    }
    unsigned long long oracle_cost = ~0ull;
    try {
        oracle_cost = enumerate_noncompliance(inst).count();
    } catch (const ResourceLimitError&) {
    }
    const unsigned long long oracle_guard =
        dollar ? ol.max_dollar_outcomes : ol.max_shift_outcomes;
    const unsigned long long xp_cost = inst.profile().m <= xl.max_candidates
                                           ? anonymous_profile_count(inst.profile().m,
                                                                     inst.profile().n())
                                           : ~0ull;
    const bool oracle_ok = ol.force || oracle_cost <= oracle_guard;
    if (oracle_ok && oracle_cost <= xp_cost) return is_safe_oracle(inst, ol);
    if (xp_cost != ~0ull) return is_safe_anonymous_xp(inst, xl, ol);
    if (oracle_ok) return is_safe_oracle(inst, ol);
    throw ResourceLimitError(
        "no applicable method within resource guards; rerun with --force or raise the limits");
}

}  // namespace safebribe
