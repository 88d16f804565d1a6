#pragma once

// Match-line energizer: one XNOR source node plus k-1 XOR gate nodes decide
// whether a word's match line may be precharged.

#include <span>

#include "smlecam/core.hpp"

namespace smle {

struct MleTrace {
  MNodes m_nodes;
  NodeLevel ml_en = NodeLevel::Low;
};

/// Evaluates the energizer over k-bit stored/search prefixes.
///
/// ML_EN is High only when M0 (XNOR) is High and every XOR node M1..M_{k-1}
/// is Low. When M0 is Low the pull-up chain has no source and ML_EN resolves
/// Low even if the remaining bits match. Throws PrefixTooShort for k < 2 and
/// InvalidConfig for k > 6 or unequal prefix lengths.
MleTrace mle_eval(std::span<const bool> stored_prefix, std::span<const bool> search_prefix);

/// Same evaluation reading the first k bits of two words directly.
MleTrace mle_eval(const BitWord& stored, const BitWord& query, std::size_t k);

/// Probability 2^-k that a uniform stored prefix matches a uniform search
/// prefix, i.e. the fraction of match lines that get energized.
double expected_energized_fraction(std::size_t k);

}  // namespace smle
