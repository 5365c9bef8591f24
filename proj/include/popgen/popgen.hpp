#pragma once

#include "rational.hpp"
#include "rng.hpp"
#include "partition.hpp"
#include "esf.hpp"
#include "stats.hpp"
#include "gem.hpp"
#include "order_stats.hpp"
#include "eve.hpp"
#include "coalescent.hpp"
#include "finite.hpp"
#include "combinatorics.hpp"
#include "neutrality.hpp"
#include "acceptance.hpp"
