#pragma once

#include "derange/approximation.hpp"
#include "derange/blocks.hpp"
#include "derange/characterization.hpp"
#include "derange/conjugacy.hpp"
#include "derange/cutoff.hpp"
#include "derange/dataset.hpp"
#include "derange/derangements.hpp"
#include "derange/group.hpp"
#include "derange/interval.hpp"
#include "derange/lattice.hpp"
#include "derange/parallel.hpp"
#include "derange/permutation.hpp"
#include "derange/primes.hpp"
#include "derange/rational.hpp"
#include "derange/report.hpp"
#include "derange/valuation.hpp"
#include "derange/valueset.hpp"
#include "derange/witness.hpp"
