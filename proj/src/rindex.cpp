#include "coopmsr/rindex.hpp"

#include <string>

namespace coopmsr {

IndexSpace::IndexSpace(int radix, int digit_count, int group_digit_count)
    : r_(radix), m_(digit_count), g_(group_digit_count) {
    if (r_ < 2) throw std::invalid_argument("index radix must be >= 2");
    if (m_ < 1) throw std::invalid_argument("index digit count must be >= 1");
    if (g_ < 1 || g_ > m_) throw std::invalid_argument("group digit boundary out of range");

    pow_.resize(static_cast<std::size_t>(m_) + 1);
    pow_[0] = 1;
    const std::int64_t limit = std::int64_t{1} << kMaxIndexBits;
    for (int i = 1; i <= m_; ++i) {
        if (pow_[static_cast<std::size_t>(i - 1)] > limit / r_)
            throw GuardLimitError("index space overflows the 2^" + std::to_string(kMaxIndexBits) +
                                  " guard: r=" + std::to_string(r_) + " m=" + std::to_string(m_));
        pow_[static_cast<std::size_t>(i)] = pow_[static_cast<std::size_t>(i - 1)] * r_;
    }
    size_ = pow_[static_cast<std::size_t>(m_)];
}

void IndexSpace::check_index(std::int64_t a) const {
    if (a < 0 || a >= size_)
        throw std::invalid_argument("index " + std::to_string(a) + " out of [0, " +
                                    std::to_string(size_) + ")");
}

void IndexSpace::check_position(int i) const {
    if (i < 1 || i > m_)
        throw std::invalid_argument("digit position " + std::to_string(i) + " out of [1, " +
                                    std::to_string(m_) + "]");
}

void IndexSpace::check_digit(int v) const {
    if (v < 0 || v >= r_)
        throw std::invalid_argument("digit value " + std::to_string(v) + " out of [0, " +
                                    std::to_string(r_) + ")");
}

DigitVector IndexSpace::expand(std::int64_t a) const {
    check_index(a);
    DigitVector out(static_cast<std::size_t>(m_));
    expand_into(a, out.data());
    return out;
}

void IndexSpace::expand_into(std::int64_t a, std::uint8_t* out) const {
    for (int i = 0; i < m_; ++i) {
        out[i] = static_cast<std::uint8_t>(a % r_);
        a /= r_;
    }
}

std::int64_t IndexSpace::compress(const DigitVector& digits) const {
    if (digits.size() != static_cast<std::size_t>(m_))
        throw std::invalid_argument("digit vector has wrong length");
    std::int64_t a = 0;
    for (int i = m_ - 1; i >= 0; --i) {
        const int d = digits[static_cast<std::size_t>(i)];
        check_digit(d);
        a = a * r_ + d;
    }
    return a;
}

std::int64_t IndexSpace::substitute(std::int64_t a, int i, int v) const {
    check_index(a);
    check_position(i);
    check_digit(v);
    return substitute_known(a, i, digit(a, i), v);
}

AxisSet IndexSpace::axis_set(int u, int v) const {
    check_position(u);
    check_digit(v);
    return AxisSet(u, v, r_, pow_[static_cast<std::size_t>(u - 1)], axis_size());
}

int IndexSpace::suffix_weight(std::int64_t a) const {
    check_index(a);
    a /= pow_[static_cast<std::size_t>(g_)];
    int w = 0;
    for (int i = g_ + 1; i <= m_; ++i) {
        if (a % r_ <= 1) ++w;
        a /= r_;
    }
    return w;
}

int IndexSpace::suffix_weight_digits(const std::uint8_t* digits) const {
    int w = 0;
    for (int i = g_; i < m_; ++i) w += digits[i] <= 1;
    return w;
}

int IndexSpace::match_count(std::int64_t a, const std::vector<std::pair<int, int>>& pins) const {
    check_index(a);
    int hits = 0;
    for (const auto& [pos, val] : pins) {
        check_position(pos);
        check_digit(val);
        hits += digit(a, pos) == val;
    }
    return hits;
}

}  // namespace coopmsr
