#pragma once

#include "ncr/bigint.hpp"
#include "ncr/curves.hpp"
#include "ncr/functor.hpp"
#include "ncr/json_io.hpp"
#include "ncr/kgroups.hpp"
#include "ncr/lemmas.hpp"
#include "ncr/matrix.hpp"
#include "ncr/quadratic.hpp"
#include "ncr/report.hpp"
#include "ncr/zeta.hpp"
