#pragma once

#include "padic_lattice/errors.hpp"
#include "padic_lattice/rational.hpp"
#include "padic_lattice/linalg.hpp"
#include "padic_lattice/norm.hpp"
#include "padic_lattice/lattice.hpp"
#include "padic_lattice/transform.hpp"
#include "padic_lattice/solvers.hpp"
#include "padic_lattice/generator.hpp"
