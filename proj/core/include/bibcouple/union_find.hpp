#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace bibcouple {

// Union-find with path halving and union by size. Tracks the component
// count and the size of the largest component as merges happen.
class DisjointSets {
  public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1), components_(n), largest_(n > 0 ? 1 : 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns true if the two elements were in different sets.
    bool unite(std::size_t a, std::size_t b) {
        std::size_t ra = find(a), rb = find(b);
        if (ra == rb) return false;
        if (size_[ra] < size_[rb]) std::swap(ra, rb);
        parent_[rb] = ra;
        size_[ra] += size_[rb];
        if (size_[ra] > largest_) largest_ = size_[ra];
        --components_;
        return true;
    }

    std::size_t component_count() const { return components_; }
    std::size_t largest_component() const { return largest_; }
    std::size_t size_of(std::size_t x) { return size_[find(x)]; }
    std::size_t element_count() const { return parent_.size(); }

  private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
    std::size_t components_;
    std::size_t largest_;
};

}  // namespace bibcouple
