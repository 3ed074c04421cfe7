#pragma once

#include <bit>
#if defined(__BMI2__)
#include <immintrin.h>
#endif
#include <cstdint>
#include <iterator>
#include <string>
#include <vector>

namespace degjoin {

using AttrId = int;
inline constexpr int kMaxAttrs = 32;

/// A set of attribute ids packed into one machine word. Iteration is in
/// ascending id order.
class AttrSet {
public:
    constexpr AttrSet() = default;
    constexpr explicit AttrSet(std::uint32_t bits) : bits_(bits) {}

    static constexpr AttrSet single(AttrId a) { return AttrSet(std::uint32_t{1} << a); }
    static constexpr AttrSet range(int n) {
        return AttrSet(n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
    }
    static AttrSet of(std::initializer_list<AttrId> ids) {
        AttrSet s;
        for (AttrId a : ids) s.insert(a);
        return s;
    }

    constexpr std::uint32_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(AttrId a) const { return (bits_ >> a) & 1u; }
    constexpr bool subset_of(AttrSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool intersects(AttrSet o) const { return (bits_ & o.bits_) != 0; }
    constexpr AttrId first() const { return std::countr_zero(bits_); }

    void insert(AttrId a) { bits_ |= std::uint32_t{1} << a; }
    void erase(AttrId a) { bits_ &= ~(std::uint32_t{1} << a); }

    friend constexpr AttrSet operator|(AttrSet a, AttrSet b) { return AttrSet(a.bits_ | b.bits_); }
    friend constexpr AttrSet operator&(AttrSet a, AttrSet b) { return AttrSet(a.bits_ & b.bits_); }
    friend constexpr AttrSet operator-(AttrSet a, AttrSet b) { return AttrSet(a.bits_ & ~b.bits_); }
    AttrSet& operator|=(AttrSet o) { bits_ |= o.bits_; return *this; }
    AttrSet& operator&=(AttrSet o) { bits_ &= o.bits_; return *this; }
    AttrSet& operator-=(AttrSet o) { bits_ &= ~o.bits_; return *this; }
    friend constexpr bool operator==(AttrSet a, AttrSet b) = default;
    friend constexpr auto operator<=>(AttrSet a, AttrSet b) { return a.bits_ <=> b.bits_; }

    /// Position of `a` among the members (number of members below it).
    constexpr int rank(AttrId a) const { return std::popcount(bits_ & ((std::uint32_t{1} << a) - 1)); }

    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = AttrId;
        using difference_type = std::ptrdiff_t;
        using pointer = const AttrId*;
        using reference = AttrId;

        constexpr iterator() = default;
        constexpr explicit iterator(std::uint32_t rest) : rest_(rest) {}
        constexpr AttrId operator*() const { return std::countr_zero(rest_); }
        constexpr iterator& operator++() { rest_ &= rest_ - 1; return *this; }
        constexpr iterator operator++(int) { auto t = *this; ++*this; return t; }
        friend constexpr bool operator==(iterator a, iterator b) = default;

    private:
        std::uint32_t rest_ = 0;
    };
    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    std::vector<AttrId> to_vector() const { return {begin(), end()}; }

private:
    std::uint32_t bits_ = 0;
};

/// Calls f(sub) for every subset of `s`, including the empty set and `s`.
template <class F>
void for_each_subset(AttrSet s, F&& f) {
    std::uint32_t full = s.bits();
    std::uint32_t sub = 0;
    while (true) {
        f(AttrSet(sub));
        if (sub == full) break;
        sub = (sub - full) & full;
    }
}

/// Maps a subset of `schema` to a dense local mask in [0, 2^|schema|).
inline std::uint32_t local_mask(AttrSet schema, AttrSet sub) {
#if defined(__BMI2__)
    return _pext_u32(sub.bits(), schema.bits());
#endif
    std::uint32_t out = 0;
    int i = 0;
    for (AttrId a : schema) {
        if (sub.contains(a)) out |= 1u << i;
        ++i;
    }
    return out;
}

inline AttrSet from_local_mask(AttrSet schema, std::uint32_t mask) {
#if defined(__BMI2__)
    return AttrSet(_pdep_u32(mask, schema.bits()));
#endif
    AttrSet out;
    int i = 0;
    for (AttrId a : schema) {
        if ((mask >> i) & 1u) out.insert(a);
        ++i;
    }
    return out;
}

std::string to_string(AttrSet s, const std::vector<std::string>* names = nullptr);

}  // namespace degjoin

template <>
struct std::hash<degjoin::AttrSet> {
    std::size_t operator()(degjoin::AttrSet s) const noexcept { return std::hash<std::uint32_t>{}(s.bits()); }
};
