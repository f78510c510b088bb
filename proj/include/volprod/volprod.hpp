#pragma once

#include "volprod/canonical.hpp"
#include "volprod/errors.hpp"
#include "volprod/geometry.hpp"
#include "volprod/io.hpp"
#include "volprod/polarity.hpp"
#include "volprod/quadrature.hpp"
#include "volprod/random.hpp"
#include "volprod/santalo.hpp"
#include "volprod/sectors.hpp"
#include "volprod/stability.hpp"
#include "volprod/suite.hpp"
