#pragma once

#include "letf/fo_models.hpp"
#include "letf/syntax.hpp"

namespace letf {

// Q1x1...Qnxn C with C quantifier-free (n may be 0, which covers generalized
// literals and top/bot).
bool is_pnf(const Formula &f);

// Pushes ~ and @ below every quantifier with the quantifier equivalences,
// renames clashing binders, then pulls quantifiers out of & and |, the left
// operand's prefix first. Quantifier-free parts are left untouched.
Formula to_pnf(const Formula &f);

// Bounded two-sided check: fo_equivalent at |D| <= max_size.
FoVerdict verify_pnf(const Formula &f, const Formula &g, std::size_t max_size,
                     const Signature &sig = {}, unsigned jobs = 1);

} // namespace letf
