#pragma once

/// Umbrella header for the whole library.

#include <hessmap/certificate.hpp>
#include <hessmap/closed_orbits.hpp>
#include <hessmap/curves.hpp>
#include <hessmap/differential_rank.hpp>
#include <hessmap/diophantine.hpp>
#include <hessmap/fixtures.hpp>
#include <hessmap/form.hpp>
#include <hessmap/harmonic.hpp>
#include <hessmap/hessian.hpp>
#include <hessmap/indeterminacy.hpp>
#include <hessmap/matrix.hpp>
#include <hessmap/random.hpp>
#include <hessmap/rational.hpp>
#include <hessmap/serialize.hpp>
#include <hessmap/suite.hpp>
