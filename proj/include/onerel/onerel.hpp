#pragma once
// Convenience umbrella for the whole library.

#include "onerel/complexity.hpp"
#include "onerel/counting.hpp"
#include "onerel/dehn.hpp"
#include "onerel/genericity.hpp"
#include "onerel/presentation.hpp"
#include "onerel/sample.hpp"
#include "onerel/search.hpp"
#include "onerel/symmetry.hpp"
#include "onerel/verify.hpp"
#include "onerel/words.hpp"
