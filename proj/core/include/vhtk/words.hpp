// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <string>
#include <vector>

namespace vh {

/// A word in a free group: lowercase letters a, b, ... are generators and
/// the matching uppercase letters their inverses.
using Word = std::string;

int generator_of(char letter);
bool is_inverse_letter(char letter);
char letter_inverse(char letter);
/// Letter for generator g (0-based), inverted when `inverse` is set.
char make_letter(int g, bool inverse);
/// Throws InvalidInput on letters outside the first `rank` generators.
void check_letters(const Word& w, int rank);

Word free_reduce(const Word& w);
bool is_reduced(const Word& w);
Word word_inverse(const Word& w);
Word word_product(const Word& a, const Word& b);
/// g x g^-1, reduced.
Word conjugate(const Word& g, const Word& x);

/// w = u c u^-1 with c cyclically reduced.
struct CyclicForm {
  Word conjugator;
  Word core;
};
CyclicForm cyclic_reduce(const Word& w);
/// The maximal root of a nontrivial element: w = r^k with k largest.
Word root_of(const Word& w);
int root_exponent(const Word& w);

/// Order a < A < b < B < ..., shorter words first.
bool shortlex_less(const Word& a, const Word& b);
/// Every reduced word of length <= max_len in shortlex order.
std::vector<Word> reduced_words(int rank, int max_len);
Word random_reduced_word(int rank, int length, std::mt19937_64& rng);
/// Applies a permutation of the generators.
Word relabel(const Word& w, const std::vector<int>& perm);

}  // namespace vh
