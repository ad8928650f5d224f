#pragma once

// Symbolic tensor calculus over chart metrics with exact canonical-form
// arithmetic, the Levi-Civita curvature pipeline, curvature operators, and a
// classifier for curvature-restricted geometric structures.

#include "symcurv/assumptions.hpp"
#include "symcurv/catalog.hpp"
#include "symcurv/classify.hpp"
#include "symcurv/context.hpp"
#include "symcurv/curvature.hpp"
#include "symcurv/errors.hpp"
#include "symcurv/expression.hpp"
#include "symcurv/linear.hpp"
#include "symcurv/metric_doc.hpp"
#include "symcurv/operators.hpp"
#include "symcurv/parser.hpp"
#include "symcurv/polynomial.hpp"
#include "symcurv/printing.hpp"
#include "symcurv/tensor.hpp"
