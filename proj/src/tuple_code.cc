#include <wsx/tuple_code.hh>
#include <wsx/error.hh>

namespace wsx
{
    TupleCoder::TupleCoder(std::vector<std::size_t> radices) :
        _radices(std::move(radices))
    {
        for (auto r : _radices) {
            if (r == 0)
                internal_error("tuple coder with an empty component");
            _count *= r;
        }
    }

    auto TupleCoder::ambient(std::size_t x_size, std::size_t n, std::size_t b_size) -> TupleCoder
    {
        std::vector<std::size_t> radices(n, x_size);
        radices.push_back(b_size);
        return TupleCoder{ std::move(radices) };
    }

    auto TupleCoder::power(std::size_t base, std::size_t n) -> TupleCoder
    {
        return TupleCoder{ std::vector<std::size_t>(n, base) };
    }

    auto TupleCoder::encode(std::span<const Element> tuple) const -> std::size_t
    {
        std::size_t code = 0;
        for (std::size_t i = 0 ; i < _radices.size() ; ++i)
            code = code * _radices[i] + tuple[i];
        return code;
    }

    auto TupleCoder::decode(std::size_t code) const -> std::vector<Element>
    {
        std::vector<Element> out(_radices.size());
        decode_into(code, out);
        return out;
    }

    void TupleCoder::decode_into(std::size_t code, std::span<Element> out) const
    {
        for (std::size_t i = _radices.size() ; i-- > 0 ; ) {
            out[i] = static_cast<Element>(code % _radices[i]);
            code /= _radices[i];
        }
    }
}
