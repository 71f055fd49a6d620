#ifndef WSX_TUPLE_CODE_HH
#define WSX_TUPLE_CODE_HH 1

#include <wsx/algebra.hh>

#include <span>
#include <vector>

namespace wsx
{
    /// Mixed-radix coding of tuples; the first component is most significant, so
    /// numeric order is lexicographic order.
    class TupleCoder
    {
        private:
            std::vector<std::size_t> _radices;
            std::size_t _count = 1;

        public:
            explicit TupleCoder(std::vector<std::size_t> radices);

            /// n copies of `x_size` followed by `b_size`: the coding of X^n x B.
            static auto ambient(std::size_t x_size, std::size_t n, std::size_t b_size) -> TupleCoder;

            static auto power(std::size_t base, std::size_t n) -> TupleCoder;

            auto count() const -> std::size_t
            {
                return _count;
            }

            auto width() const -> std::size_t
            {
                return _radices.size();
            }

            auto encode(std::span<const Element> tuple) const -> std::size_t;
            auto decode(std::size_t code) const -> std::vector<Element>;
            void decode_into(std::size_t code, std::span<Element> out) const;
    };
}

#endif
