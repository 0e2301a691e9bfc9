#pragma once

#include "gentle/bitset.hpp"
#include "gentle/cograph_regularity.hpp"
#include "gentle/cotree.hpp"
#include "gentle/cover_regularity.hpp"
#include "gentle/encodings.hpp"
#include "gentle/error.hpp"
#include "gentle/generators.hpp"
#include "gentle/gf2_rank.hpp"
#include "gentle/graph.hpp"
#include "gentle/random.hpp"
#include "gentle/rational.hpp"
#include "gentle/regularity.hpp"
#include "gentle/spectral.hpp"
#include "gentle/tree_partition.hpp"
