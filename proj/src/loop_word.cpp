#include "mloop/loop_word.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace mloop {

LoopWord::LoopWord(std::vector<EdgeRef> letters) : letters_(std::move(letters)) {
  for (const auto& l : letters_) {
    if (l.edge < 0) throw LoopError("negative edge id " + std::to_string(l.edge));
    if (l.orientation != 1 && l.orientation != -1)
      throw LoopError("orientation must be +1 or -1");
  }
}

LoopWord::LoopWord(std::initializer_list<EdgeRef> letters)
    : LoopWord(std::vector<EdgeRef>(letters)) {}

LoopWord parse_loop(std::string_view text) {
  std::vector<EdgeRef> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view token = text.substr(i, j - i);
    i = j;

    const char sign = token.back();
    std::string_view digits = token.substr(0, token.size() - 1);
    int edge = -1;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), edge);
    if ((sign != '+' && sign != '-') || digits.empty() || ec != std::errc{} ||
        ptr != digits.data() + digits.size() || edge < 0) {
      throw LoopError("malformed token '" + std::string(token) + "'");
    }
    letters.push_back({edge, sign == '+' ? 1 : -1});
  }
  if (letters.empty()) throw LoopError("empty loop word");
  return LoopWord(std::move(letters));
}

std::string to_string(const LoopWord& word) {
  std::ostringstream out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out << ' ';
    out << word[i].edge << (word[i].orientation > 0 ? '+' : '-');
  }
  return out.str();
}

OccurrenceTable occurrences(const LoopWord& word, int edge) {
  OccurrenceTable table;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (word[i].edge != edge) continue;
    (word[i].orientation > 0 ? table.positive : table.negative).push_back(i);
    table.all.push_back({i, word[i].orientation});
  }
  return table;
}

LoopWord concat(const LoopWord& a, const LoopWord& b) {
  std::vector<EdgeRef> letters(a.begin(), a.end());
  letters.insert(letters.end(), b.begin(), b.end());
  return LoopWord(std::move(letters));
}

LoopWord inverse(const LoopWord& word) {
  std::vector<EdgeRef> letters;
  letters.reserve(word.size());
  for (auto it = word.letters().rbegin(); it != word.letters().rend(); ++it)
    letters.push_back(it->inverse());
  return LoopWord(std::move(letters));
}

LoopWord power(const LoopWord& word, int exponent) {
  if (exponent == 1) return word;
  if (exponent == -1) return inverse(word);
  throw LoopError("word exponent must be +1 or -1");
}

LoopWord rotate(const LoopWord& word, std::size_t k) {
  if (word.is_null()) return word;
  std::vector<EdgeRef> letters;
  letters.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i)
    letters.push_back(word[(k + i) % word.size()]);
  return LoopWord(std::move(letters));
}

namespace {

void check_position(const LoopWord& word, std::size_t x) {
  if (x >= word.size())
    throw LoopError("position " + std::to_string(x) + " outside word of length " +
                    std::to_string(word.size()));
}

void check_pair(const LoopWord& word, std::size_t x, std::size_t y) {
  check_position(word, x);
  check_position(word, y);
  if (x == y) throw LoopError("split and twist need two distinct occurrences");
  if (word[x].edge != word[y].edge)
    throw LoopError("positions " + std::to_string(x) + " and " + std::to_string(y) +
                    " are occurrences of different edges");
}

int orientation_product(const LoopWord& word, std::size_t x, std::size_t y) {
  return word[x].orientation * word[y].orientation;
}

}  // namespace

LoopWord segment(const LoopWord& word, std::size_t from, std::size_t to) {
  check_position(word, from);
  check_position(word, to);
  std::vector<EdgeRef> letters;
  const std::size_t n = word.size();
  for (std::size_t i = (from + 1) % n; i != to; i = (i + 1) % n) letters.push_back(word[i]);
  return LoopWord(std::move(letters));
}

LoopWord excise(const LoopWord& word, std::size_t x) { return segment(word, x, x); }

LoopWord negative_merger(const LoopWord& l1, std::size_t x, const LoopWord& l2,
                         std::size_t y) {
  check_position(l1, x);
  check_position(l2, y);
  if (l1[x].edge != l2[y].edge) throw LoopError("merger positions hold different edges");
  const int sign = -l1[x].orientation * l2[y].orientation;
  return concat(excise(l1, x), power(excise(l2, y), sign));
}

LoopWord positive_merger(const LoopWord& l1, std::size_t x, const LoopWord& l2,
                         std::size_t y) {
  check_position(l1, x);
  check_position(l2, y);
  if (l1[x].edge != l2[y].edge) throw LoopError("merger positions hold different edges");
  const EdgeRef e{l1[x].edge, l1[x].orientation};
  const int sign = l1[x].orientation * l2[y].orientation;
  LoopWord out = concat(excise(l1, x), LoopWord{e});
  out = concat(out, power(excise(l2, y), sign));
  return concat(out, LoopWord{e});
}

std::pair<LoopWord, LoopWord> positive_split(const LoopWord& word, std::size_t x,
                                             std::size_t y) {
  check_pair(word, x, y);
  if (orientation_product(word, x, y) != 1)
    throw LoopError("positive split needs equal orientations");
  return {concat(segment(word, x, y), LoopWord{word[y]}),
          concat(segment(word, y, x), LoopWord{word[x]})};
}

std::pair<LoopWord, LoopWord> negative_split(const LoopWord& word, std::size_t x,
                                             std::size_t y) {
  check_pair(word, x, y);
  if (orientation_product(word, x, y) != -1)
    throw LoopError("negative split needs opposite orientations");
  return {segment(word, x, y), segment(word, y, x)};
}

LoopWord positive_twist(const LoopWord& word, std::size_t x, std::size_t y) {
  check_pair(word, x, y);
  if (orientation_product(word, x, y) != -1)
    throw LoopError("positive twist needs opposite orientations");
  auto [u, v] = negative_split(word, x, y);
  LoopWord out = concat(v, LoopWord{word[x]});
  out = concat(out, inverse(u));
  return concat(out, LoopWord{word[y]});
}

LoopWord negative_twist(const LoopWord& word, std::size_t x, std::size_t y) {
  check_pair(word, x, y);
  if (orientation_product(word, x, y) != 1)
    throw LoopError("negative twist needs equal orientations");
  auto [first, second] = positive_split(word, x, y);
  // The retained copy of e closes `first`; in second^-1 it opens the word.
  return negative_merger(first, first.size() - 1, inverse(second), 0);
}

}  // namespace mloop
