#pragma once

#include "phe/cosets.hpp"
#include "phe/expansions.hpp"
#include "phe/forms.hpp"
#include "phe/moebius.hpp"
#include "phe/numeric.hpp"
#include "phe/poincare.hpp"
#include "phe/qforms.hpp"
#include "phe/quadrature.hpp"
#include "phe/secondorder.hpp"
