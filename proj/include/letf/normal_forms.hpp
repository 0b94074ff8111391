#pragma once

#include "letf/syntax.hpp"

namespace letf {

enum class NormalFormKind { DNF, CNF };

// Collapses every maximal chain of ~ and @ (bullets are ~@) to one of
// A, ~A, @A, #A, top, bot over its base, recursing into the base.
Formula reduce_prefix(const Formula &f);

// Rewrites @ and # over compounds with the propagation equivalences until they
// only apply to atoms (or form top/bot). Quantifier-free input only.
Formula expand_classicality(const Formula &f);

// De Morgan and double negation to fixpoint; prefix chains reduced.
Formula push_negations(const Formula &f);

Formula to_normal_form(const Formula &f, NormalFormKind kind);

// Literal here: p, ~p, @p, #p (p atomic), top or bot.
bool is_nf_literal(const Formula &f);
bool is_normal_form(const Formula &f, NormalFormKind kind);

} // namespace letf
