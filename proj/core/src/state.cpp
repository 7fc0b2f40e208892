#include "pathmc/state.hpp"

#include <bit>

namespace pathmc {

State::State(std::size_t width, std::span<const std::uint64_t> words)
    : width_(width), words_(words.begin(), words.end()) {}

bool State::contains_all(const State& mask) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((mask.words_[i] & ~words_[i]) != 0) return false;
  }
  return true;
}

bool State::intersects(const State& mask) const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((mask.words_[i] & words_[i]) != 0) return true;
  }
  return false;
}

bool State::none() const noexcept {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t State::count() const noexcept {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += std::popcount(w);
  return n;
}

State& State::operator|=(const State& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

State& State::operator&=(const State& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

State& State::subtract(const State& other) noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] &= ~other.words_[i];
  }
  return *this;
}

std::string State::bits() const {
  std::string out(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if (test(i)) out[i] = '1';
  }
  return out;
}

std::size_t State::hash() const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ width_;
  for (std::uint64_t w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace pathmc
