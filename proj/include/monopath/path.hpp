#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "monopath/graph.hpp"

namespace monopath {

/// A finite injective vertex sequence.  Length-0 and length-1 paths are valid
/// and vacuously monochromatic; the colour label is meaningful (and required
/// by the verifier) once there is at least one edge.
struct PathSeq {
    std::vector<Vertex> vertices;
    std::optional<Colour> colour;

    std::size_t size() const { return vertices.size(); }
    bool degenerate() const { return vertices.size() <= 1; }
};

/// A one-way infinite monochromatic path, produced on demand.  The generator
/// yields one vertex per pull (nullopt once it cannot continue); any produced
/// prefix is a valid PathSeq of the stream's colour.
class OmegaPathStream {
public:
    OmegaPathStream(Colour colour, std::function<std::optional<Vertex>()> next)
        : colour_(colour), next_(std::move(next)) {}

    Colour colour() const { return colour_; }

    /// k-th vertex (0-based); extends the cached prefix as needed.
    std::optional<Vertex> at(std::size_t k) {
        while (cache_.size() <= k && !exhausted_) pull();
        if (k < cache_.size()) return cache_[k];
        return std::nullopt;
    }

    /// First min(k, produced) vertices as a PathSeq.
    PathSeq prefix(std::size_t k) {
        while (cache_.size() < k && !exhausted_) pull();
        PathSeq p;
        p.vertices.assign(cache_.begin(), cache_.begin() + std::min(k, cache_.size()));
        if (p.vertices.size() >= 2) p.colour = colour_;
        return p;
    }

    const std::vector<Vertex>& produced() const { return cache_; }
    bool exhausted() const { return exhausted_; }

private:
    void pull() {
        auto v = next_();
        if (v)
            cache_.push_back(*v);
        else
            exhausted_ = true;
    }

    Colour colour_;
    std::function<std::optional<Vertex>()> next_;
    std::vector<Vertex> cache_;
    bool exhausted_ = false;
};

} // namespace monopath
