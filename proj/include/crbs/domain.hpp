#ifndef CRBS_DOMAIN_HPP
#define CRBS_DOMAIN_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace crbs {

using Value = int;

/**
 * Finite set of integers backed by a sparse set over the initial values.
 *
 * Removal swaps the value to the end of the live prefix, so undoing removals
 * in reverse order (restore) or truncating back to an earlier size
 * (restore_to) both recover the earlier value set in O(1) per value.
 */
class Domain {
public:
    Domain();
    explicit Domain(std::vector<Value> values);

    /// Inclusive range [lo, hi].
    static Domain range(Value lo, Value hi);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    bool contains(std::int64_t v) const;

    /// Removes v if present. Returns true when something was removed.
    bool remove(Value v);

    /// Undoes the most recent removal of v. Removals must be undone in reverse order.
    void restore(Value v);

    std::size_t mark() const { return size_; }
    void restore_to(std::size_t mark);

    Value min() const;
    Value max() const;

    /// Current values in ascending order.
    std::vector<Value> values() const;

    /// Sorted initial values this domain was built from.
    std::span<const Value> universe() const;

    /// Position of v in universe(), or -1 when v was never part of the domain.
    int universe_index(std::int64_t v) const;

    /// Current value at dense position pos < size(); order is unspecified.
    Value at(std::size_t pos) const;

    bool contains_index(int idx) const { return static_cast<std::size_t>(sparse_[idx]) < size_; }

    friend bool operator==(const Domain& a, const Domain& b);

private:
    struct Universe {
        std::vector<Value> values;
        std::int64_t offset = 0;
        std::vector<int> index_of;
    };

    std::shared_ptr<const Universe> universe_;
    std::vector<int> dense_;
    std::vector<int> sparse_;
    std::size_t size_ = 0;
};

}  // namespace crbs

#endif
