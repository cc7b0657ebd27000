#pragma once

#include "plgroups/automorphism.hpp"
#include "plgroups/construct.hpp"
#include "plgroups/error.hpp"
#include "plgroups/factor.hpp"
#include "plgroups/gl2z.hpp"
#include "plgroups/group.hpp"
#include "plgroups/lattice.hpp"
#include "plgroups/plmap.hpp"
#include "plgroups/scalar.hpp"
#include "plgroups/sigma1.hpp"
#include "plgroups/slopegroup.hpp"
#include "plgroups/thompson.hpp"
#include "plgroups/twisted.hpp"
