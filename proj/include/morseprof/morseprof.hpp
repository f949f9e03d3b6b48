#pragma once

#include "catalog.hpp"
#include "collapse.hpp"
#include "error.hpp"
#include "exact_morse.hpp"
#include "filtration.hpp"
#include "matching.hpp"
#include "persistence.hpp"
#include "profile.hpp"
#include "simplicial_complex.hpp"
