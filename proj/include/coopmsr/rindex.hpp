#pragma once

#include <cstdint>
#include <iterator>
#include <utility>
#include <vector>

#include "coopmsr/errors.hpp"

namespace coopmsr {

/// Coordinate indices stay below 2^40 so that every digit operation fits
/// comfortably in signed 64-bit arithmetic.
inline constexpr int kMaxIndexBits = 40;

/// Digits of an index, least significant first (digit 1 at position 0).
using DigitVector = std::vector<std::uint8_t>;

class AxisSet;

/// r-ary digit arithmetic over [0, r^m). Digit positions are 1-based; digit 1
/// is the least significant. Positions [1, g] are the group digits, positions
/// [g+1, m] the pair digits counted by suffix_weight.
class IndexSpace {
public:
    IndexSpace(int radix, int digit_count, int group_digit_count);

    int radix() const { return r_; }
    int digit_count() const { return m_; }
    int group_digit_count() const { return g_; }
    std::int64_t size() const { return size_; }
    std::int64_t axis_size() const { return size_ / r_; }

    /// radix^i for i in [0, m].
    std::int64_t power(int i) const { return pow_[static_cast<std::size_t>(i)]; }

    int digit(std::int64_t a, int i) const {
        return static_cast<int>((a / pow_[static_cast<std::size_t>(i - 1)]) % r_);
    }

    DigitVector expand(std::int64_t a) const;
    void expand_into(std::int64_t a, std::uint8_t* out) const;
    std::int64_t compress(const DigitVector& digits) const;

    /// Index equal to a except digit i replaced by v.
    std::int64_t substitute(std::int64_t a, int i, int v) const;

    /// Same, with a's digit at position i already known to the caller.
    std::int64_t substitute_known(std::int64_t a, int i, int old_digit, int v) const {
        return a + (static_cast<std::int64_t>(v) - old_digit) * pow_[static_cast<std::size_t>(i - 1)];
    }

    AxisSet axis_set(int u, int v) const;

    /// Number of pair digits (positions g+1..m) equal to 0 or 1.
    int suffix_weight(std::int64_t a) const;
    int suffix_weight_digits(const std::uint8_t* digits) const;

    /// Number of (position, digit) pins matched by a.
    int match_count(std::int64_t a, const std::vector<std::pair<int, int>>& pins) const;

    friend bool operator==(const IndexSpace&, const IndexSpace&) = default;

private:
    void check_index(std::int64_t a) const;
    void check_position(int i) const;
    void check_digit(int v) const;

    int r_, m_, g_;
    std::int64_t size_;
    std::vector<std::int64_t> pow_;
};

/// The slice {a : a_u = v}, iterated in ascending numeric order without
/// materializing it.
class AxisSet {
public:
    AxisSet(int u, int v, int radix, std::int64_t below, std::int64_t count)
        : u_(u), v_(v), radix_(radix), below_(below), count_(count) {}

    std::int64_t size() const { return count_; }
    int digit_position() const { return u_; }
    int digit_value() const { return v_; }

    /// idx-th smallest member, idx in [0, size()).
    std::int64_t at(std::int64_t idx) const {
        return idx % below_ + v_ * below_ + idx / below_ * (below_ * radix_);
    }

    /// Position of member a within the set.
    std::int64_t index_of(std::int64_t a) const {
        return a % below_ + a / (below_ * radix_) * below_;
    }

    bool contains(std::int64_t a) const { return (a / below_) % radix_ == v_; }

    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = std::int64_t;
        using difference_type = std::int64_t;

        iterator(const AxisSet* set, std::int64_t idx) : set_(set), idx_(idx) {}
        std::int64_t operator*() const { return set_->at(idx_); }
        iterator& operator++() { ++idx_; return *this; }
        iterator operator++(int) { iterator t = *this; ++idx_; return t; }
        friend bool operator==(const iterator&, const iterator&) = default;

    private:
        const AxisSet* set_;
        std::int64_t idx_;
    };

    iterator begin() const { return {this, 0}; }
    iterator end() const { return {this, count_}; }

private:
    int u_, v_, radix_;
    std::int64_t below_;  // radix^(u-1)
    std::int64_t count_;
};

}  // namespace coopmsr
