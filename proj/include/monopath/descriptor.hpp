#pragma once

// Finitary set-descriptor language standing in for "S is in the ultrafilter U".
// A descriptor is a finite Boolean combination of atoms over the naturals:
// congruence classes, intervals, explicit finite sets, colour-restricted
// neighbourhoods of a fixed lazy graph, and (for derived sets such as label
// classes) named pointwise predicates.
//
// Every descriptor is evaluable pointwise.  Descriptors built from atoms with
// known eventual periodicity additionally carry an exact normal form
// (period, threshold, residue mask) describing their tail behaviour; the
// congruence-chain oracle decides exactly those.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monopath/graph.hpp"

namespace monopath {

struct UndecidedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tail behaviour of a set S of naturals: for x >= threshold, x is in S iff
/// mask[x % period].  The mask is kept at the minimal period so complements
/// and inclusions are directly comparable.
struct EventuallyPeriodic {
    std::uint64_t period = 1;
    std::uint64_t threshold = 0;
    std::vector<bool> mask; // size == period

    bool eventually_empty() const {
        return std::none_of(mask.begin(), mask.end(), [](bool b) { return b; });
    }
    bool eventually_full() const {
        return std::all_of(mask.begin(), mask.end(), [](bool b) { return b; });
    }

    /// Shrink the period to the smallest divisor under which the mask repeats.
    void canonicalize() {
        for (std::uint64_t p = 1; p <= period / 2; ++p) {
            if (period % p != 0) continue;
            bool repeats = true;
            for (std::uint64_t i = 0; i < period && repeats; ++i)
                if (mask[i] != mask[i % p]) repeats = false;
            if (repeats) {
                mask.resize(p);
                period = p;
                return;
            }
        }
    }

    std::vector<bool> lifted_mask(std::uint64_t target_period) const {
        std::vector<bool> out(target_period);
        for (std::uint64_t i = 0; i < target_period; ++i) out[i] = mask[i % period];
        return out;
    }
};

namespace detail {

inline std::uint64_t lcm_checked(std::uint64_t a, std::uint64_t b) {
    std::uint64_t g = std::gcd(a, b);
    std::uint64_t l = a / g;
    if (l > (std::uint64_t(1) << 24) / b + 1) throw UndecidedError("descriptor period overflow");
    l *= b;
    if (l > (std::uint64_t(1) << 24)) throw UndecidedError("descriptor period overflow");
    return l;
}

inline EventuallyPeriodic combine(const EventuallyPeriodic& a, const EventuallyPeriodic& b,
                                  const std::function<bool(bool, bool)>& op) {
    EventuallyPeriodic out;
    out.period = lcm_checked(a.period, b.period);
    out.threshold = std::max(a.threshold, b.threshold);
    auto ma = a.lifted_mask(out.period);
    auto mb = b.lifted_mask(out.period);
    out.mask.resize(out.period);
    for (std::uint64_t i = 0; i < out.period; ++i) out.mask[i] = op(ma[i], mb[i]);
    out.canonicalize();
    return out;
}

} // namespace detail

/// Immutable descriptor expression; cheap to copy (shared nodes).
class SetDescriptor {
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    enum class Op { atom_pointwise, atom_periodic, negate, intersect, unite };

    struct Node {
        Op op;
        std::string text;
        // atom_pointwise / atom_periodic
        std::function<bool(std::uint64_t)> contains;
        std::optional<EventuallyPeriodic> nf;
        // negate / intersect / unite
        NodePtr left, right;
    };

public:
    /// {x : x ≡ residue (mod modulus)}
    static SetDescriptor congruence(std::uint64_t residue, std::uint64_t modulus) {
        if (modulus == 0) throw std::invalid_argument("modulus must be positive");
        residue %= modulus;
        EventuallyPeriodic nf;
        nf.period = modulus;
        nf.mask.assign(modulus, false);
        nf.mask[residue] = true;
        nf.canonicalize();
        std::ostringstream os;
        os << "cong(" << residue << " mod " << modulus << ")";
        return make_periodic(os.str(), [residue, modulus](std::uint64_t x) { return x % modulus == residue; },
                             std::move(nf));
    }

    /// [lo, hi) for finite hi, [lo, ∞) otherwise.
    static SetDescriptor interval(std::uint64_t lo, std::optional<std::uint64_t> hi) {
        EventuallyPeriodic nf;
        nf.period = 1;
        if (hi) {
            nf.threshold = *hi;
            nf.mask = {false};
        } else {
            nf.threshold = lo;
            nf.mask = {true};
        }
        std::ostringstream os;
        os << "interval[" << lo << ",";
        if (hi)
            os << *hi << ")";
        else
            os << "inf)";
        return make_periodic(os.str(),
                             [lo, hi](std::uint64_t x) { return x >= lo && (!hi || x < *hi); },
                             std::move(nf));
    }

    static SetDescriptor finite_set(std::vector<std::uint64_t> elems) {
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        EventuallyPeriodic nf;
        nf.period = 1;
        nf.threshold = elems.empty() ? 0 : elems.back() + 1;
        nf.mask = {false};
        std::ostringstream os;
        os << "set{";
        for (std::size_t i = 0; i < elems.size(); ++i) os << (i ? "," : "") << elems[i];
        os << "}";
        auto shared = std::make_shared<std::vector<std::uint64_t>>(std::move(elems));
        return make_periodic(os.str(),
                             [shared](std::uint64_t x) {
                                 return std::binary_search(shared->begin(), shared->end(), x);
                             },
                             std::move(nf));
    }

    /// N(v,i) of a lazy graph (any colour when i is nullopt).  Carries a normal
    /// form exactly when the graph advertises a period hint; otherwise the atom
    /// is pointwise-only and the congruence oracle reports it undecided.
    static SetDescriptor neighbourhood(const LazyColouredGraph& g, Vertex v,
                                       std::optional<Colour> i) {
        if (i && (*i < 0 || *i >= g.colour_count()))
            throw std::invalid_argument("colour out of range");
        std::ostringstream os;
        os << "N(" << v << ",";
        if (i)
            os << *i;
        else
            os << "*";
        os << ")";
        auto contains = [g, v, i](std::uint64_t x) {
            if (x == v) return false;
            auto c = g.edge_colour(v, x);
            if (!c) return false;
            return !i || *c == *i;
        };
        std::optional<EventuallyPeriodic> nf;
        if (auto period = g.period_hint()) {
            EventuallyPeriodic f;
            f.period = *period;
            f.threshold = std::max<std::uint64_t>(v + 1, g.period_offset());
            f.mask.resize(f.period);
            for (std::uint64_t k = 0; k < f.period; ++k)
                f.mask[(f.threshold + k) % f.period] = contains(f.threshold + k);
            f.canonicalize();
            nf = std::move(f);
        }
        return nf ? make_periodic(os.str(), std::move(contains), std::move(*nf))
                  : make_pointwise(os.str(), std::move(contains));
    }

    /// Named pointwise predicate (e.g. a label class derived from earlier
    /// oracle answers).  Supply a normal form when the caller can prove one.
    static SetDescriptor predicate(std::string name, std::function<bool(std::uint64_t)> fn,
                                   std::optional<EventuallyPeriodic> nf = std::nullopt) {
        if (nf) nf->canonicalize();
        return nf ? make_periodic(std::move(name), std::move(fn), std::move(*nf))
                  : make_pointwise(std::move(name), std::move(fn));
    }

    SetDescriptor complement() const {
        auto n = std::make_shared<Node>();
        n->op = Op::negate;
        n->left = node_;
        n->text = "!(" + node_->text + ")";
        return SetDescriptor(std::move(n));
    }

    SetDescriptor intersect(const SetDescriptor& o) const {
        auto n = std::make_shared<Node>();
        n->op = Op::intersect;
        n->left = node_;
        n->right = o.node_;
        n->text = "(" + node_->text + " & " + o.node_->text + ")";
        return SetDescriptor(std::move(n));
    }

    SetDescriptor unite(const SetDescriptor& o) const {
        auto n = std::make_shared<Node>();
        n->op = Op::unite;
        n->left = node_;
        n->right = o.node_;
        n->text = "(" + node_->text + " | " + o.node_->text + ")";
        return SetDescriptor(std::move(n));
    }

    bool contains(std::uint64_t x) const { return eval(node_.get(), x); }

    const std::string& text() const { return node_->text; }

    /// Exact tail behaviour, when derivable from the atoms.
    std::optional<EventuallyPeriodic> normal_form() const { return norm(node_.get()); }

private:
    explicit SetDescriptor(NodePtr n) : node_(std::move(n)) {}

    static SetDescriptor make_periodic(std::string text, std::function<bool(std::uint64_t)> fn,
                                       EventuallyPeriodic nf) {
        auto n = std::make_shared<Node>();
        n->op = Op::atom_periodic;
        n->text = std::move(text);
        n->contains = std::move(fn);
        n->nf = std::move(nf);
        return SetDescriptor(std::move(n));
    }

    static SetDescriptor make_pointwise(std::string text, std::function<bool(std::uint64_t)> fn) {
        auto n = std::make_shared<Node>();
        n->op = Op::atom_pointwise;
        n->text = std::move(text);
        n->contains = std::move(fn);
        return SetDescriptor(std::move(n));
    }

    static bool eval(const Node* n, std::uint64_t x) {
        switch (n->op) {
            case Op::atom_pointwise:
            case Op::atom_periodic: return n->contains(x);
            case Op::negate: return !eval(n->left.get(), x);
            case Op::intersect: return eval(n->left.get(), x) && eval(n->right.get(), x);
            case Op::unite: return eval(n->left.get(), x) || eval(n->right.get(), x);
        }
        return false;
    }

    static std::optional<EventuallyPeriodic> norm(const Node* n) {
        switch (n->op) {
            case Op::atom_pointwise: return std::nullopt;
            case Op::atom_periodic: return n->nf;
            case Op::negate: {
                auto a = norm(n->left.get());
                if (!a) return std::nullopt;
                for (std::uint64_t i = 0; i < a->period; ++i) a->mask[i] = !a->mask[i];
                return a;
            }
            case Op::intersect: {
                auto a = norm(n->left.get());
                auto b = norm(n->right.get());
                if (!a || !b) return std::nullopt;
                return detail::combine(*a, *b, [](bool x, bool y) { return x && y; });
            }
            case Op::unite: {
                auto a = norm(n->left.get());
                auto b = norm(n->right.get());
                if (!a || !b) return std::nullopt;
                return detail::combine(*a, *b, [](bool x, bool y) { return x || y; });
            }
        }
        return std::nullopt;
    }

    NodePtr node_;
};

} // namespace monopath
