#pragma once

// Umbrella header for the swpclock library: quantum-clock tunnelling times,
// stationary dwell times and packet-averaged traversal times for
// one-dimensional static potentials.

#include "swpclock/averaging.hpp"
#include "swpclock/clock_times.hpp"
#include "swpclock/packet.hpp"
#include "swpclock/params.hpp"
#include "swpclock/plot.hpp"
#include "swpclock/potential.hpp"
#include "swpclock/propagation.hpp"
#include "swpclock/quadrature.hpp"
#include "swpclock/resonance.hpp"
#include "swpclock/scattering.hpp"
#include "swpclock/sweep.hpp"
#include "swpclock/transfer_matrix.hpp"
#include "swpclock/warnings.hpp"
