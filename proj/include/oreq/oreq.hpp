#pragma once

// Umbrella header.

#include "oreq/errors.hpp"
#include "oreq/ring.hpp"
#include "oreq/automorphism.hpp"
#include "oreq/ideals.hpp"
#include "oreq/localization.hpp"
#include "oreq/skew_poly.hpp"
#include "oreq/poly_io.hpp"
#include "oreq/linalg.hpp"
#include "oreq/random.hpp"
#include "oreq/skew_matrix.hpp"
#include "oreq/certificates.hpp"
#include "oreq/patching.hpp"
#include "oreq/json_io.hpp"
