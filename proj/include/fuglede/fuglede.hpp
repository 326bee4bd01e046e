#pragma once

#include "fuglede/automorphism.hpp"
#include "fuglede/bitset.hpp"
#include "fuglede/cyclotomic.hpp"
#include "fuglede/error.hpp"
#include "fuglede/group.hpp"
#include "fuglede/harness.hpp"
#include "fuglede/io.hpp"
#include "fuglede/numeric.hpp"
#include "fuglede/polynomial.hpp"
#include "fuglede/search.hpp"
#include "fuglede/spectra.hpp"
#include "fuglede/structure.hpp"
#include "fuglede/tiling.hpp"
