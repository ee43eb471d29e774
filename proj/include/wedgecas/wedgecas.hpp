#pragma once

#include "wedgecas/bessel.hpp"
#include "wedgecas/casimir_polder.hpp"
#include "wedgecas/closed_form.hpp"
#include "wedgecas/errors.hpp"
#include "wedgecas/geometry.hpp"
#include "wedgecas/mode_sum.hpp"
#include "wedgecas/quadrature.hpp"
#include "wedgecas/stress_tensor.hpp"
#include "wedgecas/validate.hpp"
