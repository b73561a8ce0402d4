#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <stdexcept>
#include <vector>

namespace mapr {

// Fixed-capacity ordered set of small indices backed by a bit array.
// Iteration is always in ascending index order; the mechanism's
// tie-breaking rules depend on that.
template <std::size_t Capacity>
class IndexSet
{
  static constexpr std::size_t kWordBits = 64;
  static constexpr std::size_t kWords    = (Capacity + kWordBits - 1) / kWordBits;

public:
  class const_iterator
  {
  public:
    using iterator_category = std::forward_iterator_tag;
    using value_type        = std::size_t;
    using difference_type   = std::ptrdiff_t;
    using pointer           = void;
    using reference         = std::size_t;

    const_iterator() = default;
    const_iterator(IndexSet const *set, std::size_t pos)
      : set_(set)
      , pos_(pos)
    {}

    std::size_t operator*() const
    {
      return pos_;
    }

    const_iterator &operator++()
    {
      pos_ = set_->next_from(pos_ + 1);
      return *this;
    }

    const_iterator operator++(int)
    {
      auto copy = *this;
      ++*this;
      return copy;
    }

    bool operator==(const_iterator const &other) const
    {
      return pos_ == other.pos_;
    }

  private:
    IndexSet const *set_ = nullptr;
    std::size_t     pos_ = Capacity;
  };

  IndexSet() = default;

  IndexSet(std::initializer_list<std::size_t> indices)
  {
    for (auto i : indices)
    {
      insert(i);
    }
  }

  static constexpr std::size_t capacity()
  {
    return Capacity;
  }

  // {0, 1, ..., count - 1}
  static IndexSet first_n(std::size_t count)
  {
    IndexSet s;
    for (std::size_t i = 0; i < count; ++i)
    {
      s.insert(i);
    }
    return s;
  }

  template <typename Range>
  static IndexSet from_range(Range const &range)
  {
    IndexSet s;
    for (auto i : range)
    {
      s.insert(static_cast<std::size_t>(i));
    }
    return s;
  }

  void insert(std::size_t i)
  {
    check(i);
    words_[i / kWordBits] |= bit(i);
  }

  void erase(std::size_t i)
  {
    check(i);
    words_[i / kWordBits] &= ~bit(i);
  }

  bool contains(std::size_t i) const
  {
    return i < Capacity && (words_[i / kWordBits] & bit(i)) != 0;
  }

  std::size_t size() const
  {
    std::size_t n = 0;
    for (auto w : words_)
    {
      n += static_cast<std::size_t>(std::popcount(w));
    }
    return n;
  }

  bool empty() const
  {
    for (auto w : words_)
    {
      if (w != 0)
      {
        return false;
      }
    }
    return true;
  }

  void clear()
  {
    words_.fill(0);
  }

  bool is_subset_of(IndexSet const &other) const
  {
    for (std::size_t k = 0; k < kWords; ++k)
    {
      if ((words_[k] & ~other.words_[k]) != 0)
      {
        return false;
      }
    }
    return true;
  }

  bool intersects(IndexSet const &other) const
  {
    for (std::size_t k = 0; k < kWords; ++k)
    {
      if ((words_[k] & other.words_[k]) != 0)
      {
        return true;
      }
    }
    return false;
  }

  // Lowest element; Capacity if empty.
  std::size_t lowest() const
  {
    return next_from(0);
  }

  const_iterator begin() const
  {
    return const_iterator(this, next_from(0));
  }

  const_iterator end() const
  {
    return const_iterator(this, Capacity);
  }

  std::vector<std::size_t> to_vector() const
  {
    return std::vector<std::size_t>(begin(), end());
  }

  IndexSet &operator|=(IndexSet const &other)
  {
    for (std::size_t k = 0; k < kWords; ++k)
    {
      words_[k] |= other.words_[k];
    }
    return *this;
  }

  IndexSet &operator&=(IndexSet const &other)
  {
    for (std::size_t k = 0; k < kWords; ++k)
    {
      words_[k] &= other.words_[k];
    }
    return *this;
  }

  IndexSet &operator-=(IndexSet const &other)
  {
    for (std::size_t k = 0; k < kWords; ++k)
    {
      words_[k] &= ~other.words_[k];
    }
    return *this;
  }

  friend IndexSet operator|(IndexSet a, IndexSet const &b)
  {
    return a |= b;
  }

  friend IndexSet operator&(IndexSet a, IndexSet const &b)
  {
    return a &= b;
  }

  friend IndexSet operator-(IndexSet a, IndexSet const &b)
  {
    return a -= b;
  }

  friend bool operator==(IndexSet const &, IndexSet const &) = default;

  // Lexicographic on the underlying words; only used for canonical keys.
  friend bool operator<(IndexSet const &a, IndexSet const &b)
  {
    return a.words_ < b.words_;
  }

private:
  static constexpr std::uint64_t bit(std::size_t i)
  {
    return std::uint64_t{1} << (i % kWordBits);
  }

  static void check(std::size_t i)
  {
    if (i >= Capacity)
    {
      throw std::out_of_range("index exceeds IndexSet capacity");
    }
  }

  std::size_t next_from(std::size_t pos) const
  {
    while (pos < Capacity)
    {
      std::size_t   k    = pos / kWordBits;
      std::uint64_t word = words_[k] >> (pos % kWordBits);
      if (word != 0)
      {
        return pos + static_cast<std::size_t>(std::countr_zero(word));
      }
      pos = (k + 1) * kWordBits;
    }
    return Capacity;
  }

  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace mapr
