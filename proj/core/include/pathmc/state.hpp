#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace pathmc {

// Fixed-width presence vector: bit i is set iff species i is present.
class State {
 public:
  State() = default;
  explicit State(std::size_t width)
      : width_(width), words_((width + 63) / 64, 0) {}
  State(std::size_t width, std::span<const std::uint64_t> words);

  std::size_t width() const noexcept { return width_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool test(std::size_t i) const noexcept {
    return (words_[i / 64] >> (i % 64)) & 1u;
  }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t bit = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= bit;
    } else {
      words_[i / 64] &= ~bit;
    }
  }

  // mask ⊆ *this
  bool contains_all(const State& mask) const noexcept;
  bool intersects(const State& mask) const noexcept;
  bool none() const noexcept;
  std::size_t count() const noexcept;

  State& operator|=(const State& other) noexcept;
  State& operator&=(const State& other) noexcept;
  // Removes every species present in `other`.
  State& subtract(const State& other) noexcept;

  // '0'/'1' per species, species 0 first (most-significant species last).
  std::string bits() const;

  std::size_t hash() const noexcept;

  friend bool operator==(const State& a, const State& b) noexcept {
    return a.width_ == b.width_ && a.words_ == b.words_;
  }

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept { return s.hash(); }
};

}  // namespace pathmc
