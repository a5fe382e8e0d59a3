#pragma once

#include "gravbell/arrays.hpp"
#include "gravbell/chsh.hpp"
#include "gravbell/errors.hpp"
#include "gravbell/quadrature.hpp"
#include "gravbell/quantum.hpp"
#include "gravbell/spacetime.hpp"
#include "gravbell/spectra.hpp"
