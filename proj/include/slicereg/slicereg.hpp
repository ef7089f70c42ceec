#pragma once

// Quaternionic slice-regular power series: ⋆-calculus, slice evaluation
// geometry, and verifiers for the sharp positive-real-part and sup-controlled
// bound families.

#include "slicereg/caratheodory.hpp"
#include "slicereg/errors.hpp"
#include "slicereg/evaluation.hpp"
#include "slicereg/generators.hpp"
#include "slicereg/identities.hpp"
#include "slicereg/quaternion.hpp"
#include "slicereg/random.hpp"
#include "slicereg/series.hpp"
#include "slicereg/version.hpp"
