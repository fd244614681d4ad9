#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mloop {

/// One letter of a loop word: an edge of E+ traversed forwards (+1) or
/// backwards (-1).
struct EdgeRef {
  int edge = 0;
  int orientation = 1;

  EdgeRef inverse() const { return {edge, -orientation}; }
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

class LoopError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A cyclic word of oriented edges. The empty word is the null loop, whose
/// holonomy is the identity. Words are stored raw: no backtrack erasure and
/// no cyclic canonicalization.
class LoopWord {
 public:
  LoopWord() = default;
  explicit LoopWord(std::vector<EdgeRef> letters);
  LoopWord(std::initializer_list<EdgeRef> letters);

  static LoopWord null() { return {}; }

  bool is_null() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  const EdgeRef& operator[](std::size_t i) const { return letters_[i]; }
  std::span<const EdgeRef> letters() const { return letters_; }

  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  friend bool operator==(const LoopWord&, const LoopWord&) = default;

 private:
  std::vector<EdgeRef> letters_;
};

struct Occurrence {
  std::size_t position = 0;
  int orientation = 1;
  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

/// Occurrences of one edge in a word. `positive` holds the positions of e+,
/// `negative` those of e-, `all` both in increasing position order.
struct OccurrenceTable {
  std::vector<std::size_t> positive;
  std::vector<std::size_t> negative;
  std::vector<Occurrence> all;

  int m() const { return static_cast<int>(all.size()); }
  int t() const {
    return static_cast<int>(positive.size()) - static_cast<int>(negative.size());
  }
  bool empty() const { return all.empty(); }
};

// Text format: whitespace-separated tokens `<edge_id><+|->`.
LoopWord parse_loop(std::string_view text);
std::string to_string(const LoopWord& word);

OccurrenceTable occurrences(const LoopWord& word, int edge);

LoopWord concat(const LoopWord& a, const LoopWord& b);
LoopWord inverse(const LoopWord& word);
/// `word` for exponent +1, `inverse(word)` for exponent -1.
LoopWord power(const LoopWord& word, int exponent);
/// Cyclic rotation so that letter k becomes the first letter.
LoopWord rotate(const LoopWord& word, std::size_t k);

/// Letters strictly between positions `from` and `to`, read cyclically
/// forward from `from + 1`. When from == to this is the whole word minus
/// that letter.
LoopWord segment(const LoopWord& word, std::size_t from, std::size_t to);

/// The open word obtained by removing the letter at x, read starting just
/// after x.
LoopWord excise(const LoopWord& word, std::size_t x);

// Surgeries at occurrences of a common edge e. Positions are 0-based indices
// into the word; each must hold a letter of e.

/// (l1 \ e_x)(l2 \ e_y)^(-w_x w_y)
LoopWord negative_merger(const LoopWord& l1, std::size_t x, const LoopWord& l2,
                         std::size_t y);
/// (l1 \ e_x) e^(w_x) (l2 \ e_y)^(w_x w_y) e^(w_x)
LoopWord positive_merger(const LoopWord& l1, std::size_t x, const LoopWord& l2,
                         std::size_t y);
/// Requires w_x w_y = +1. Each half keeps one copy of e.
std::pair<LoopWord, LoopWord> positive_split(const LoopWord& word, std::size_t x,
                                             std::size_t y);
/// Requires w_x w_y = -1. Both marked copies of e are dropped.
std::pair<LoopWord, LoopWord> negative_split(const LoopWord& word, std::size_t x,
                                             std::size_t y);
/// Requires w_x w_y = -1. With U the segment x->y and V the segment y->x,
/// returns V e^(w_x) U^-1 e^(w_y): the segment preceding e_x plays the first
/// split half.
LoopWord positive_twist(const LoopWord& word, std::size_t x, std::size_t y);
/// Requires w_x w_y = +1. The negative merger of the two positive-split
/// halves at their retained copies of e: U V^-1.
LoopWord negative_twist(const LoopWord& word, std::size_t x, std::size_t y);

}  // namespace mloop
