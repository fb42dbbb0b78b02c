#pragma once

#include "pt/core.hpp"
#include "pt/oracle.hpp"
#include "pt/parallel.hpp"
#include "pt/potential.hpp"
#include "pt/quadrature.hpp"
#include "pt/spectrum.hpp"
#include "pt/thermo.hpp"
#include "pt/wavefunctions.hpp"
