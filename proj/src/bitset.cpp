#include "schemes/bitset.hpp"

namespace schemes {

namespace {

using word_type = Bitset::word_type;
constexpr std::size_t W = Bitset::word_bits;

// out := in << s, dropping bits that leave the word array
void shift_up(std::span<const word_type> in, std::span<word_type> out,
              std::size_t s) {
  std::size_t const ws = s / W, bs = s % W, nw = in.size();
  for (std::size_t i = nw; i-- > 0;) {
    word_type v = 0;
    if (i >= ws) {
      v = in[i - ws] << bs;
      if (bs != 0 && i >= ws + 1) v |= in[i - ws - 1] >> (W - bs);
    }
    out[i] = v;
  }
}

// out |= in >> s
void shift_down_or(std::span<const word_type> in, std::span<word_type> out,
                   std::size_t s) {
  std::size_t const ws = s / W, bs = s % W, nw = in.size();
  for (std::size_t i = 0; i < nw; ++i) {
    word_type v = 0;
    if (i + ws < nw) {
      v = in[i + ws] >> bs;
      if (bs != 0 && i + ws + 1 < nw) v |= in[i + ws + 1] << (W - bs);
    }
    out[i] |= v;
  }
}

}  // namespace

Bitset Bitset::rotated(std::size_t shift) const {
  if (size_ == 0) return *this;
  shift %= size_;
  if (shift == 0) return *this;
  Bitset r(size_);
  shift_up(words_, r.words_, shift);
  r.trim();
  shift_down_or(words_, r.words_, size_ - shift);
  return r;
}

}  // namespace schemes
