#pragma once

#include "coneweyl/errors.hpp"
#include "coneweyl/legendre.hpp"
#include "coneweyl/parallel.hpp"
#include "coneweyl/minkowski.hpp"
#include "coneweyl/sphere.hpp"
#include "coneweyl/cone.hpp"
#include "coneweyl/weyl.hpp"
#include "coneweyl/gns.hpp"
#include "coneweyl/lorentz.hpp"
#include "coneweyl/fields.hpp"
#include "coneweyl/random.hpp"
#include "coneweyl/io.hpp"
#include "coneweyl/suites.hpp"
