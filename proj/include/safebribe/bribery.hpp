#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "safebribe/election.hpp"

namespace safebribe {

struct Election {
    std::vector<std::string> candidate_names;
    Profile profile;
    TieBreakOrder tiebreak;

    int m() const { return static_cast<int>(candidate_names.size()); }

    CandidateId id_of(const std::string& name) const {
        for (int i = 0; i < m(); ++i)
            if (candidate_names[static_cast<size_t>(i)] == name) return i;
        throw VoterIdError("unknown candidate " + name);
    }
    const std::string& name_of(CandidateId c) const {
        return candidate_names[static_cast<size_t>(c)];
    }
};

struct BriberPreference {
    LinearOrder order;      // the briber's full ranking
    CandidateId preferred;  // c, required to be the top of order

    void validate() const {
        if (order.top() != preferred)
            throw PreconditionError("preferred candidate must be ranked first by the briber");
    }
    bool prefers(CandidateId a, CandidateId b) const { return order.prefers(a, b); }
};

struct GoodBadPartition {
    std::vector<CandidateId> good;
    std::vector<CandidateId> bad;
    CandidateId baseline_winner;

    bool is_bad(CandidateId c) const {
        for (CandidateId b : bad)
            if (b == c) return true;
        return false;
    }
    bool is_good(CandidateId c) const { return !is_bad(c); }
};

// Per-voter non-negative left-shift amounts for the preferred candidate,
// aligned with the profile's vote order.
struct ShiftVector {
    std::vector<int> shifts;

    bool is_zero() const {
        for (int s : shifts)
            if (s != 0) return false;
        return true;
    }
    long long total() const {
        long long t = 0;
        for (int s : shifts) t += s;
        return t;
    }
};

struct DollarCostModel {
    std::vector<long long> price;  // per voter, profile order
    long long budget = 0;
};

struct ShiftCostModel {
    // table[i][s] = price for shifting c left by s positions in vote i;
    // table[i][0] must be 0 and rows must be non-decreasing unless the
    // relaxed flag is set.
    std::vector<std::vector<long long>> table;
    long long budget = 0;
    bool monotone = true;

    void validate(int m) const {
        for (const auto& row : table) {
            if (static_cast<int>(row.size()) != m)
                throw DimensionError("shift cost table must have m entries (positions 0..m-1)");
            if (row[0] != 0) throw PreconditionError("shift cost at 0 must be 0");
            if (monotone)
                for (size_t s = 1; s < row.size(); ++s)
                    if (row[s] < row[s - 1])
                        throw PreconditionError("shift cost table must be non-decreasing");
        }
    }
};

struct IsSafeDollarPayload {
    Profile bribed_profile;  // Q, same voters in the same order as P
};
struct IsSafeShiftPayload {
    ShiftVector shifts;
};
struct SafeDollarPayload {
    DollarCostModel costs;
};
struct SafeShiftPayload {
    ShiftCostModel costs;
};

using Payload =
    std::variant<IsSafeDollarPayload, IsSafeShiftPayload, SafeDollarPayload, SafeShiftPayload>;

struct BriberyInstance {
    Election election;
    VotingRule rule;
    BriberPreference briber;
    Payload payload;

    const Profile& profile() const { return election.profile; }
    const TieBreakOrder& tiebreak() const { return election.tiebreak; }
    CandidateId preferred() const { return briber.preferred; }

    bool is_dollar_is_safe() const { return std::holds_alternative<IsSafeDollarPayload>(payload); }
    bool is_shift_is_safe() const { return std::holds_alternative<IsSafeShiftPayload>(payload); }
    bool is_safe_variant() const { return is_dollar_is_safe() || is_shift_is_safe(); }
    bool is_dollar_solve() const { return std::holds_alternative<SafeDollarPayload>(payload); }
    bool is_shift_solve() const { return std::holds_alternative<SafeShiftPayload>(payload); }
};

inline GoodBadPartition good_bad_partition(const Profile& profile, const VotingRule& rule,
                                           const TieBreakOrder& tiebreak,
                                           const BriberPreference& briber) {
    const CandidateId w = winner(profile, rule, tiebreak);
    GoodBadPartition part;
    part.baseline_winner = w;
    for (CandidateId a = 0; a < profile.m; ++a) {
        if (a == w || briber.prefers(a, w))
            part.good.push_back(a);
        else
            part.bad.push_back(a);
    }
    return part;
}

// Voters whose bribed vote differs from their original one. No-op "bribes"
// (identical votes) are not bribed voters.
inline std::vector<int> bribed_voters(const Profile& p, const Profile& q) {
    if (p.n() != q.n()) throw VoterIdError("profiles have different voter counts");
    std::vector<int> out;
    for (int i = 0; i < p.n(); ++i) {
        if (p.votes[static_cast<size_t>(i)].voter != q.votes[static_cast<size_t>(i)].voter)
            throw VoterIdError("voter ids of P and Q disagree at index " + std::to_string(i));
        if (p.order_of(i) != q.order_of(i)) out.push_back(i);
    }
    return out;
}

inline LinearOrder shift_left(const LinearOrder& order, CandidateId c, int amount,
                              const std::string& voter = "") {
    const int pos = order.position_of(c);
    if (amount < 0 || amount > pos - 1)
        throw ShiftRangeError("shift " + std::to_string(amount) + " out of range for voter " +
                              voter);
    if (amount == 0) return order;
    LinearOrder shifted = order;
    auto& r = shifted.ranking;
    for (int p = pos - 1; p > pos - 1 - amount; --p)
        r[static_cast<size_t>(p)] = r[static_cast<size_t>(p - 1)];
    r[static_cast<size_t>(pos - 1 - amount)] = c;
    return shifted;
}

inline Profile apply_shift(const Profile& p, CandidateId c, const ShiftVector& s) {
    if (static_cast<int>(s.shifts.size()) != p.n())
        throw DimensionError("shift vector length does not match voter count");
    Profile q = p;
    for (int i = 0; i < p.n(); ++i)
        q.votes[static_cast<size_t>(i)].order = shift_left(
            p.order_of(i), c, s.shifts[static_cast<size_t>(i)], p.votes[static_cast<size_t>(i)].voter);
    return q;
}

inline long long dollar_cost(const DollarCostModel& model, const std::vector<int>& bribed) {
    long long total = 0;
    for (int i : bribed) {
        if (i < 0 || i >= static_cast<int>(model.price.size()))
            throw VoterIdError("no price for voter index " + std::to_string(i));
        total += model.price[static_cast<size_t>(i)];
    }
    return total;
}

inline long long shift_cost(const ShiftCostModel& model, const ShiftVector& s) {
    if (s.shifts.size() != model.table.size())
        throw DimensionError("shift vector length does not match cost table");
    long long total = 0;
    for (size_t i = 0; i < s.shifts.size(); ++i) {
        const auto& row = model.table[i];
        const int si = s.shifts[i];
        if (si < 0 || si >= static_cast<int>(row.size()))
            throw ShiftRangeError("shift amount outside cost table for voter index " +
                                  std::to_string(i));
        total += row[static_cast<size_t>(si)];
    }
    return total;
}

// Iterates every partial-compliance outcome of an Is-Safe payload in a fixed
// deterministic order: characteristic/shift vectors compared entrywise over
// the profile's voter order, ascending lexicographically (the last voter
// varies fastest). Cloneable and restartable.
class NoncomplianceRange {
public:
    // Dollar model: outcomes are subsets of the bribed voters.
    NoncomplianceRange(const Profile& p, const Profile& q)
        : p_(&p), q_(&q), c_(-1), bribed_(bribed_voters(p, q)) {
        count_ = 1;
        for (size_t i = 0; i < bribed_.size(); ++i) {
            if (count_ > (1ull << 62)) throw ResourceLimitError("too many compliance subsets");
            count_ *= 2;
        }
    }

    // Shift model: outcomes are componentwise sub-vectors of s.
    NoncomplianceRange(const Profile& p, CandidateId c, const ShiftVector& s)
        : p_(&p), q_(nullptr), c_(c), shifts_(s.shifts) {
        count_ = 1;
        for (size_t i = 0; i < shifts_.size(); ++i) {
            const int pos = p.order_of(static_cast<int>(i)).position_of(c);
            if (shifts_[i] < 0 || shifts_[i] > pos - 1)
                throw ShiftRangeError("shift out of range for voter " +
                                      p.votes[i].voter);
            count_ *= static_cast<unsigned long long>(shifts_[i]) + 1;
            if (count_ > (1ull << 62)) throw ResourceLimitError("too many shift outcomes");
        }
    }

    unsigned long long count() const { return count_; }

    bool dollar_model() const { return q_ != nullptr; }
    const std::vector<int>& bribed() const { return bribed_; }

    // Complying subset of the k-th outcome (dollar model), as voter indices.
    std::vector<int> comply_set(unsigned long long k) const {
        std::vector<int> out;
        const size_t nb = bribed_.size();
        for (size_t j = 0; j < nb; ++j)
            if (k & (1ull << (nb - 1 - j))) out.push_back(bribed_[j]);
        return out;
    }

    // Sub-shift vector of the k-th outcome (shift model).
    ShiftVector sub_shift(unsigned long long k) const {
        ShiftVector s;
        s.shifts.assign(shifts_.size(), 0);
        for (size_t j = shifts_.size(); j-- > 0;) {
            const unsigned long long radix = static_cast<unsigned long long>(shifts_[j]) + 1;
            s.shifts[j] = static_cast<int>(k % radix);
            k /= radix;
        }
        return s;
    }

    Profile outcome(unsigned long long k) const {
        if (dollar_model()) {
            Profile r = *p_;
            for (int i : comply_set(k))
                r.votes[static_cast<size_t>(i)].order = q_->order_of(i);
            return r;
        }
        return apply_shift(*p_, c_, sub_shift(k));
    }

private:
    const Profile* p_;
    const Profile* q_;
    CandidateId c_;
    std::vector<int> bribed_;
    std::vector<int> shifts_;
    unsigned long long count_ = 0;
};

inline NoncomplianceRange enumerate_noncompliance(const BriberyInstance& inst) {
    if (inst.is_dollar_is_safe())
        return NoncomplianceRange(inst.profile(),
                                  std::get<IsSafeDollarPayload>(inst.payload).bribed_profile);
    if (inst.is_shift_is_safe())
        return NoncomplianceRange(inst.profile(), inst.preferred(),
                                  std::get<IsSafeShiftPayload>(inst.payload).shifts);
    throw VariantError("noncompliance enumeration needs an Is-Safe payload");
}

}  // namespace safebribe
