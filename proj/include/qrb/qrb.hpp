#pragma once

// Umbrella header.

#include "qrb/bounds.hpp"
#include "qrb/certify.hpp"
#include "qrb/config.hpp"
#include "qrb/dense.hpp"
#include "qrb/mixers.hpp"
#include "qrb/pauli.hpp"
#include "qrb/problems.hpp"
#include "qrb/sim.hpp"
