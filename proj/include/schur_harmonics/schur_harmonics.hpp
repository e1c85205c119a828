#ifndef SCHUR_HARMONICS_SCHUR_HARMONICS_HPP
#define SCHUR_HARMONICS_SCHUR_HARMONICS_HPP

#include "errors.hpp"
#include "parallel.hpp"
#include "schatten.hpp"
#include "special_fn.hpp"
#include "quadrature.hpp"
#include "haar.hpp"
#include "gelfand.hpp"
#include "symplectic.hpp"
#include "coset_geometry.hpp"
#include "decay_certificate.hpp"

#endif
