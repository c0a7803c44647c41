#pragma once

#include "hgptsym/scalar.hpp"
#include "hgptsym/matrix.hpp"
#include "hgptsym/polynomial.hpp"
#include "hgptsym/harmonics.hpp"
#include "hgptsym/groups.hpp"
#include "hgptsym/invariants.hpp"
#include "hgptsym/hgpt.hpp"
#include "hgptsym/tables.hpp"
#include "hgptsym/io.hpp"
