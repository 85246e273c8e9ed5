#pragma once

#include "w1fl/boundary.hpp"
#include "w1fl/core.hpp"
#include "w1fl/generators.hpp"
#include "w1fl/io.hpp"
#include "w1fl/oracle.hpp"
#include "w1fl/path.hpp"
#include "w1fl/scalar.hpp"
#include "w1fl/transform.hpp"
#include "w1fl/types.hpp"
