#include "crbs/domain.hpp"

#include <algorithm>
#include <stdexcept>

namespace crbs {

namespace {

// Offset table limit; wider domains would need a hashed index.
constexpr std::int64_t max_domain_span = std::int64_t{1} << 24;

}  // namespace

Domain::Domain() : universe_(std::make_shared<Universe>()) {}

Domain::Domain(std::vector<Value> values) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    auto universe = std::make_shared<Universe>();
    if (!values.empty()) {
        const std::int64_t span = std::int64_t{values.back()} - values.front() + 1;
        if (span > max_domain_span) {
            throw std::invalid_argument("domain span too large");
        }
        universe->offset = values.front();
        universe->index_of.assign(static_cast<std::size_t>(span), -1);
        for (std::size_t i = 0; i < values.size(); ++i) {
            universe->index_of[static_cast<std::size_t>(values[i] - universe->offset)] = static_cast<int>(i);
        }
    }
    universe->values = std::move(values);

    const auto n = universe->values.size();
    dense_.resize(n);
    sparse_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        dense_[i] = static_cast<int>(i);
        sparse_[i] = static_cast<int>(i);
    }
    size_ = n;
    universe_ = std::move(universe);
}

Domain Domain::range(Value lo, Value hi) {
    std::vector<Value> values;
    for (std::int64_t v = lo; v <= hi; ++v) {
        values.push_back(static_cast<Value>(v));
    }
    return Domain(std::move(values));
}

int Domain::universe_index(std::int64_t v) const {
    const std::int64_t slot = v - universe_->offset;
    if (slot < 0 || slot >= static_cast<std::int64_t>(universe_->index_of.size())) {
        return -1;
    }
    return universe_->index_of[static_cast<std::size_t>(slot)];
}

bool Domain::contains(std::int64_t v) const {
    const int idx = universe_index(v);
    return idx >= 0 && contains_index(idx);
}

bool Domain::remove(Value v) {
    const int idx = universe_index(v);
    if (idx < 0 || !contains_index(idx)) {
        return false;
    }
    const int pos = sparse_[idx];
    const int last = static_cast<int>(size_) - 1;
    const int moved = dense_[last];
    dense_[pos] = moved;
    sparse_[moved] = pos;
    dense_[last] = idx;
    sparse_[idx] = last;
    --size_;
    return true;
}

void Domain::restore(Value v) {
    const int idx = universe_index(v);
    if (idx < 0 || static_cast<std::size_t>(sparse_[idx]) != size_) {
        throw std::logic_error("domain restore out of order");
    }
    ++size_;
}

void Domain::restore_to(std::size_t mark) {
    if (mark < size_ || mark > dense_.size()) {
        throw std::logic_error("domain mark out of range");
    }
    size_ = mark;
}

Value Domain::min() const {
    for (std::size_t i = 0; i < universe_->values.size(); ++i) {
        if (contains_index(static_cast<int>(i))) {
            return universe_->values[i];
        }
    }
    throw std::logic_error("min of empty domain");
}

Value Domain::max() const {
    for (std::size_t i = universe_->values.size(); i-- > 0;) {
        if (contains_index(static_cast<int>(i))) {
            return universe_->values[i];
        }
    }
    throw std::logic_error("max of empty domain");
}

std::vector<Value> Domain::values() const {
    std::vector<Value> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < universe_->values.size(); ++i) {
        if (contains_index(static_cast<int>(i))) {
            out.push_back(universe_->values[i]);
        }
    }
    return out;
}

std::span<const Value> Domain::universe() const { return universe_->values; }

Value Domain::at(std::size_t pos) const { return universe_->values[static_cast<std::size_t>(dense_[pos])]; }

bool operator==(const Domain& a, const Domain& b) {
    if (a.size_ != b.size_ || a.universe_->values != b.universe_->values) {
        return false;
    }
    for (std::size_t pos = 0; pos < a.size_; ++pos) {
        if (!b.contains_index(a.dense_[pos])) {
            return false;
        }
    }
    return true;
}

}  // namespace crbs
