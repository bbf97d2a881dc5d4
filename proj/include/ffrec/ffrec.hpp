#pragma once

// Umbrella header: exact arithmetic in F_q and F_q[t], d-th power residue
// symbols, the reciprocity law, and its coset-product verification.

#include "ffrec/errors.hpp"
#include "ffrec/field.hpp"
#include "ffrec/parse.hpp"
#include "ffrec/poly.hpp"
#include "ffrec/report.hpp"
#include "ffrec/rousseau.hpp"
#include "ffrec/sweep.hpp"
#include "ffrec/symbol.hpp"
