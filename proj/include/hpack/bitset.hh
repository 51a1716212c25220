#ifndef HPACK_BITSET_HH
#define HPACK_BITSET_HH

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace hpack
{
    /// Fixed-width dynamic bitset. The width is fixed at construction and all binary
    /// operations require equal widths. Used both for vertex sets (width = host vertex
    /// count) and for sets of copy indices inside the exact-cover search.
    class Bitset
    {
        public:
            Bitset() = default;
            explicit Bitset(int size) : _size(size), _words((size + 63) / 64, 0) { }

            static auto full(int size) -> Bitset
            {
                Bitset b(size);
                for (int v = 0 ; v < size ; ++v)
                    b.insert(v);
                return b;
            }

            static auto of(int size, std::initializer_list<int> members) -> Bitset
            {
                Bitset b(size);
                for (int v : members)
                    b.insert(v);
                return b;
            }

            template <typename Range_>
            static auto from(int size, const Range_ & members) -> Bitset
            {
                Bitset b(size);
                for (int v : members)
                    b.insert(v);
                return b;
            }

            auto host_size() const -> int { return _size; }

            auto contains(int v) const -> bool
            {
                return (_words[std::size_t(v) >> 6] >> (unsigned(v) & 63)) & 1;
            }

            void insert(int v) { _words[std::size_t(v) >> 6] |= std::uint64_t{ 1 } << (unsigned(v) & 63); }
            void erase(int v) { _words[std::size_t(v) >> 6] &= ~(std::uint64_t{ 1 } << (unsigned(v) & 63)); }

            auto count() const -> int
            {
                int c = 0;
                for (auto w : _words)
                    c += std::popcount(w);
                return c;
            }

            auto empty() const -> bool
            {
                for (auto w : _words)
                    if (w)
                        return false;
                return true;
            }

            /// Smallest member greater than `after`, or -1.
            auto next(int after) const -> int
            {
                int start = after + 1;
                if (start >= _size)
                    return -1;
                std::size_t wi = std::size_t(start) >> 6;
                std::uint64_t w = _words[wi] & (~std::uint64_t{ 0 } << (unsigned(start) & 63));
                while (true) {
                    if (w)
                        return int(wi * 64 + std::size_t(std::countr_zero(w)));
                    if (++wi == _words.size())
                        return -1;
                    w = _words[wi];
                }
            }

            auto first() const -> int { return next(-1); }

            template <typename F_>
            void for_each(F_ && f) const
            {
                for (std::size_t wi = 0 ; wi < _words.size() ; ++wi) {
                    std::uint64_t w = _words[wi];
                    while (w) {
                        int bit = std::countr_zero(w);
                        f(int(wi * 64 + std::size_t(bit)));
                        w &= w - 1;
                    }
                }
            }

            auto to_vector() const -> std::vector<int>
            {
                std::vector<int> result;
                result.reserve(std::size_t(count()));
                for_each([&] (int v) { result.push_back(v); });
                return result;
            }

            auto intersection_count(const Bitset & other) const -> int
            {
                int c = 0;
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    c += std::popcount(_words[i] & other._words[i]);
                return c;
            }

            auto intersects(const Bitset & other) const -> bool
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    if (_words[i] & other._words[i])
                        return true;
                return false;
            }

            auto is_subset_of(const Bitset & other) const -> bool
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    if (_words[i] & ~other._words[i])
                        return false;
                return true;
            }

            auto operator&= (const Bitset & other) -> Bitset &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] &= other._words[i];
                return *this;
            }

            auto operator|= (const Bitset & other) -> Bitset &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] |= other._words[i];
                return *this;
            }

            /// Set difference.
            auto operator-= (const Bitset & other) -> Bitset &
            {
                for (std::size_t i = 0 ; i < _words.size() ; ++i)
                    _words[i] &= ~other._words[i];
                return *this;
            }

            friend auto operator& (Bitset a, const Bitset & b) -> Bitset { return a &= b; }
            friend auto operator| (Bitset a, const Bitset & b) -> Bitset { return a |= b; }
            friend auto operator- (Bitset a, const Bitset & b) -> Bitset { return a -= b; }

            friend auto operator== (const Bitset &, const Bitset &) -> bool = default;

            auto words() const -> std::span<const std::uint64_t> { return _words; }

            auto hash() const -> std::size_t
            {
                std::size_t h = std::size_t(_size) * 0x9e3779b97f4a7c15ULL;
                for (auto w : _words)
                    h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                return h;
            }

        private:
            int _size = 0;
            std::vector<std::uint64_t> _words;
    };

    using VertexSet = Bitset;

    struct BitsetHash
    {
        auto operator() (const Bitset & b) const -> std::size_t { return b.hash(); }
    };
}

#endif
