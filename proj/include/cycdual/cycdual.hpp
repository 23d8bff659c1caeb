#pragma once

#include "cycdual/certificates.hpp"
#include "cycdual/cycles.hpp"
#include "cycdual/duality.hpp"
#include "cycdual/errors.hpp"
#include "cycdual/gf2.hpp"
#include "cycdual/graph.hpp"
#include "cycdual/io.hpp"
#include "cycdual/lp.hpp"
#include "cycdual/matrix.hpp"
#include "cycdual/oracles.hpp"
#include "cycdual/random.hpp"
#include "cycdual/rational.hpp"
#include "cycdual/widths.hpp"
