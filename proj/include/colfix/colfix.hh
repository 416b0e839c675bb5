#pragma once

#include "colfix/axioms.hh"
#include "colfix/coalgebra.hh"
#include "colfix/formula.hh"
#include "colfix/interpolation.hh"
#include "colfix/io.hh"
#include "colfix/logic.hh"
#include "colfix/parity.hh"
#include "colfix/projection.hh"
#include "colfix/translate.hh"
