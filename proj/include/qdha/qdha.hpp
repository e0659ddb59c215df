#pragma once

#include "scalar.hpp"
#include "qext.hpp"
#include "ratfunc.hpp"
#include "poly.hpp"
#include "qseries.hpp"
#include "qorth.hpp"
#include "ncgroebner.hpp"
#include "qdisc.hpp"
#include "spectral.hpp"
#include "bergman.hpp"
