// SPDX-License-Identifier: Apache-2.0
#include "vhtk/words.hpp"

#include <algorithm>
#include <cctype>

#include "vhtk/error.hpp"

namespace vh {

int generator_of(char letter) { return std::tolower(static_cast<unsigned char>(letter)) - 'a'; }
bool is_inverse_letter(char letter) { return std::isupper(static_cast<unsigned char>(letter)) != 0; }
char letter_inverse(char letter) {
  return static_cast<char>(is_inverse_letter(letter) ? std::tolower(static_cast<unsigned char>(letter))
                                                     : std::toupper(static_cast<unsigned char>(letter)));
}
char make_letter(int g, bool inverse) { return static_cast<char>((inverse ? 'A' : 'a') + g); }

void check_letters(const Word& w, int rank) {
  for (char c : w)
    if (!std::isalpha(static_cast<unsigned char>(c)) || generator_of(c) >= rank)
      throw InvalidInput("word '" + w + "' uses a letter outside the first " + std::to_string(rank) + " generators");
}

Word free_reduce(const Word& w) {
  Word out;
  for (char c : w) {
    if (!out.empty() && out.back() == letter_inverse(c)) out.pop_back();
    else out.push_back(c);
  }
  return out;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == letter_inverse(w[i - 1])) return false;
  return true;
}

Word word_inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (char& c : out) c = letter_inverse(c);
  return out;
}

Word word_product(const Word& a, const Word& b) { return free_reduce(a + b); }

Word conjugate(const Word& g, const Word& x) { return free_reduce(g + x + word_inverse(g)); }

CyclicForm cyclic_reduce(const Word& w) {
  const Word r = free_reduce(w);
  std::size_t i = 0;
  while (2 * i + 1 < r.size() && r[i] == letter_inverse(r[r.size() - 1 - i])) ++i;
  return {r.substr(0, i), r.substr(i, r.size() - 2 * i)};
}

namespace {

// Smallest p dividing |c| with c = (c[0..p))^(|c|/p).
std::size_t smallest_period(const Word& c) {
  const std::size_t n = c.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = c[i] == c[i - p];
    if (ok) return p;
  }
  return n;
}

}  // namespace

Word root_of(const Word& w) {
  const CyclicForm f = cyclic_reduce(w);
  if (f.core.empty()) throw InvalidInput("root of the trivial element");
  const Word r = f.core.substr(0, smallest_period(f.core));
  return free_reduce(f.conjugator + r + word_inverse(f.conjugator));
}

int root_exponent(const Word& w) {
  const CyclicForm f = cyclic_reduce(w);
  if (f.core.empty()) return 0;
  return static_cast<int>(f.core.size() / smallest_period(f.core));
}

namespace {
int letter_rank(char c) { return 2 * generator_of(c) + (is_inverse_letter(c) ? 1 : 0); }
}  // namespace

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return letter_rank(a[i]) < letter_rank(b[i]);
  return false;
}

std::vector<Word> reduced_words(int rank, int max_len) {
  std::vector<Word> out{Word{}};
  std::size_t start = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = start; i < end; ++i)
      for (int g = 0; g < rank; ++g)
        for (bool inv : {false, true}) {
          const char c = make_letter(g, inv);
          if (!out[i].empty() && out[i].back() == letter_inverse(c)) continue;
          out.push_back(out[i] + c);
        }
    start = end;
  }
  return out;
}

Word random_reduced_word(int rank, int length, std::mt19937_64& rng) {
  Word w;
  std::uniform_int_distribution<int> pick(0, 2 * rank - 1);
  while (static_cast<int>(w.size()) < length) {
    const int k = pick(rng);
    const char c = make_letter(k / 2, k % 2 == 1);
    if (!w.empty() && w.back() == letter_inverse(c)) continue;
    w.push_back(c);
  }
  return w;
}

Word relabel(const Word& w, const std::vector<int>& perm) {
  Word out;
  for (char c : w) out.push_back(make_letter(perm.at(static_cast<std::size_t>(generator_of(c))), is_inverse_letter(c)));
  return out;
}

}  // namespace vh
