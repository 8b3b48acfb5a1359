#pragma once

// Large-set oracles: coherence-checked decision procedures over set
// descriptors, substituting for a non-principal ultrafilter.
//
// The congruence-chain oracle fixes a nested residue chain r_m mod lcm(1..m)
// and declares a set large exactly when it eventually contains that
// progression.  On the Boolean algebra of eventually periodic sets this is a
// genuine finitely additive 0/1 measure (the trace of any non-principal
// ultrafilter refining the chain), so it decides every descriptor with a
// normal form and refuses the rest.
//
// The density oracle answers by sampled upper density with a fixed tie-break;
// it is heuristic but total, and the transcript checker still audits it.

#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monopath/descriptor.hpp"
#include "monopath/verify.hpp"

namespace monopath {

enum class Largeness { small, large };

struct OracleIncoherence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TranscriptEntry {
    SetDescriptor descriptor;
    Largeness answer;
};

class LargeSetOracle {
public:
    virtual ~LargeSetOracle() = default;

    Largeness decide(const SetDescriptor& d) {
        auto it = memo_.find(d.text());
        if (it != memo_.end()) return it->second;
        Largeness a = decide_impl(d);
        memo_.emplace(d.text(), a);
        transcript_.push_back({d, a});
        return a;
    }

    bool is_large(const SetDescriptor& d) { return decide(d) == Largeness::large; }

    const std::vector<TranscriptEntry>& transcript() const { return transcript_; }
    virtual const char* kind() const = 0;

    /// Audits the full transcript for the four filter invariants:
    /// complementarity, monotonicity, pairwise intersections, and
    /// non-principality.  Periodic answers are compared exactly on their
    /// normal forms; pointwise-only answers on a sampled window.
    Report check_coherence() const {
        Report rep;
        struct Row {
            const SetDescriptor* descriptor;
            Largeness answer;
            std::optional<EventuallyPeriodic> nf;
            std::vector<bool> window; // sampled fallback, filled lazily
        };
        std::vector<Row> rows;
        // Deduplicate by canonical tail behaviour; same tail must mean same answer.
        std::map<std::string, std::size_t> seen;
        for (const auto& e : transcript_) {
            Row row{&e.descriptor, e.answer, e.descriptor.normal_form(), {}};
            std::string key;
            if (row.nf) {
                std::ostringstream os;
                os << "p" << row.nf->period << ":";
                for (bool b : row.nf->mask) os << (b ? '1' : '0');
                key = os.str();
            } else {
                row.window.resize(coherence_window_);
                for (std::uint64_t k = 0; k < coherence_window_; ++k)
                    row.window[k] = e.descriptor.contains(coherence_base_ + k);
                std::ostringstream os;
                os << "w:";
                for (bool b : row.window) os << (b ? '1' : '0');
                key = os.str();
            }
            auto [it, fresh] = seen.emplace(key, rows.size());
            if (!fresh) {
                if (rows[it->second].answer != row.answer)
                    rep.violate("inconsistent answers for equivalent sets: " +
                                e.descriptor.text() + " vs " + rows[it->second].descriptor->text());
                continue;
            }
            rows.push_back(std::move(row));
        }

        auto window_of = [&](Row& r) -> const std::vector<bool>& {
            if (r.window.empty()) {
                r.window.resize(coherence_window_);
                for (std::uint64_t k = 0; k < coherence_window_; ++k)
                    r.window[k] = r.descriptor->contains(coherence_base_ + k);
            }
            return r.window;
        };

        for (std::size_t i = 0; i < rows.size(); ++i) {
            // Non-principality: cofinite sets are large, finite sets small.
            if (rows[i].nf) {
                if (rows[i].nf->eventually_full() && rows[i].answer != Largeness::large)
                    rep.violate("cofinite set answered small: " + rows[i].descriptor->text());
                if (rows[i].nf->eventually_empty() && rows[i].answer != Largeness::small)
                    rep.violate("finite set answered large: " + rows[i].descriptor->text());
            }
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                bool exact = rows[i].nf && rows[j].nf;
                std::vector<bool> ma, mb;
                if (exact) {
                    std::uint64_t period =
                        detail::lcm_checked(rows[i].nf->period, rows[j].nf->period);
                    ma = rows[i].nf->lifted_mask(period);
                    mb = rows[j].nf->lifted_mask(period);
                } else {
                    ma = window_of(rows[i]);
                    mb = window_of(rows[j]);
                }
                bool complementary = true, a_in_b = true, b_in_a = true, meet_empty = true;
                for (std::size_t k = 0; k < ma.size(); ++k) {
                    if (ma[k] == mb[k]) complementary = false;
                    if (ma[k] && !mb[k]) a_in_b = false;
                    if (mb[k] && !ma[k]) b_in_a = false;
                    if (ma[k] && mb[k]) meet_empty = false;
                }
                if (complementary && rows[i].answer == rows[j].answer)
                    rep.violate(std::string("complementarity: both answered ") +
                                (rows[i].answer == Largeness::large ? "large" : "small") + ": " +
                                rows[i].descriptor->text() + " / " + rows[j].descriptor->text());
                if (a_in_b && rows[i].answer == Largeness::large &&
                    rows[j].answer == Largeness::small)
                    rep.violate("monotonicity: " + rows[i].descriptor->text() +
                                " large but superset " + rows[j].descriptor->text() + " small");
                if (b_in_a && rows[j].answer == Largeness::large &&
                    rows[i].answer == Largeness::small)
                    rep.violate("monotonicity: " + rows[j].descriptor->text() +
                                " large but superset " + rows[i].descriptor->text() + " small");
                if (exact && meet_empty && rows[i].answer == Largeness::large &&
                    rows[j].answer == Largeness::large)
                    rep.violate("intersection: two large sets are eventually disjoint: " +
                                rows[i].descriptor->text() + " / " + rows[j].descriptor->text());
            }
        }
        return rep;
    }

    /// Convenience: throw on any transcript incoherence.
    void require_coherent() const {
        Report rep = check_coherence();
        if (!rep.ok()) throw OracleIncoherence("oracle transcript incoherent: " + rep.issues.front());
    }

protected:
    virtual Largeness decide_impl(const SetDescriptor&) = 0;

    std::uint64_t coherence_base_ = 64;
    std::uint64_t coherence_window_ = 1024;

private:
    std::map<std::string, Largeness> memo_;
    std::vector<TranscriptEntry> transcript_;
};

/// Oracle from a nested residue chain: level m uses modulus M_m = lcm(1..m)
/// and residue r_m with r_{m+1} ≡ r_m (mod M_m).  A supplied chain of length L
/// is extended canonically (r_m = r_L for m > L).  A set with eventual period
/// P is large iff it eventually contains the progression at the first level
/// whose modulus P divides.
class CongruenceChainOracle final : public LargeSetOracle {
public:
    explicit CongruenceChainOracle(std::vector<std::uint64_t> residues = {0}) {
        if (residues.empty()) residues = {0};
        std::uint64_t modulus = 1;
        for (std::size_t idx = 0; idx < residues.size(); ++idx) {
            std::uint64_t m = idx + 1; // level
            modulus = std::lcm(modulus, m);
            if (residues[idx] >= modulus)
                throw std::invalid_argument("residue at level " + std::to_string(m) +
                                            " exceeds its modulus");
            if (idx > 0) {
                // nested against the previous level's modulus
                std::uint64_t prev_modulus = 1;
                for (std::uint64_t k = 1; k <= m - 1; ++k) prev_modulus = std::lcm(prev_modulus, k);
                if (residues[idx] % prev_modulus != residues[idx - 1] % prev_modulus)
                    throw std::invalid_argument("residue chain not nested at level " +
                                                std::to_string(m));
            }
        }
        residues_ = std::move(residues);
    }

    const char* kind() const override { return "congruence-chain"; }

    /// Residue of the chain modulo `period` (looked up at the deciding level).
    std::uint64_t chain_residue(std::uint64_t period) const {
        std::uint64_t modulus = 1;
        for (std::uint64_t m = 1; m <= 40; ++m) { // lcm(1..40) still fits in 64 bits
            modulus = std::lcm(modulus, m);
            if (modulus % period == 0) {
                std::uint64_t r = m <= residues_.size() ? residues_[m - 1] : residues_.back();
                return r % period;
            }
        }
        throw UndecidedError("period " + std::to_string(period) + " beyond the residue chain");
    }

protected:
    Largeness decide_impl(const SetDescriptor& d) override {
        auto nf = d.normal_form();
        if (!nf)
            throw UndecidedError("descriptor is not eventually periodic: " + d.text());
        return nf->mask[chain_residue(nf->period)] ? Largeness::large : Largeness::small;
    }

private:
    std::vector<std::uint64_t> residues_;
};

/// Heuristic oracle for colourings with no periodic structure: a set is large
/// iff its sampled density over a fixed window is at least 1/2.  Labelled
/// heuristic; transcript coherence is still audited and incoherence aborts.
class DensityOracle final : public LargeSetOracle {
public:
    // Odd default window: a set and its complement can never both reach
    // density 1/2, so complementary queries stay coherent.
    explicit DensityOracle(std::uint64_t window_base = 64, std::uint64_t window_size = 2047) {
        coherence_base_ = window_base;
        coherence_window_ = window_size;
    }

    const char* kind() const override { return "density"; }

protected:
    Largeness decide_impl(const SetDescriptor& d) override {
        std::uint64_t count = 0;
        for (std::uint64_t k = 0; k < coherence_window_; ++k)
            if (d.contains(coherence_base_ + k)) ++count;
        return 2 * count >= coherence_window_ ? Largeness::large : Largeness::small;
    }
};

/// Caller-supplied decision procedure (tests, experiments).
class UserOracle final : public LargeSetOracle {
public:
    explicit UserOracle(std::function<Largeness(const SetDescriptor&)> fn) : fn_(std::move(fn)) {}
    const char* kind() const override { return "user"; }

protected:
    Largeness decide_impl(const SetDescriptor& d) override { return fn_(d); }

private:
    std::function<Largeness(const SetDescriptor&)> fn_;
};

inline std::unique_ptr<CongruenceChainOracle>
make_congruence_oracle(std::vector<std::uint64_t> residues = {0}) {
    return std::make_unique<CongruenceChainOracle>(std::move(residues));
}

} // namespace monopath
