#pragma once

#include "kstab/exact.hpp"
#include "kstab/poly.hpp"
#include "kstab/solve.hpp"
#include "kstab/picard.hpp"
#include "kstab/alpha.hpp"
#include "kstab/stability.hpp"
#include "kstab/dfcalc.hpp"
#include "kstab/region.hpp"
#include "kstab/parse.hpp"
#include "kstab/serialize.hpp"
