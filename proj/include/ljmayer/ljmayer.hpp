#pragma once

// Umbrella header.

#include "ljmayer/exact.hpp"
#include "ljmayer/lsbound.hpp"
#include "ljmayer/numerics.hpp"
#include "ljmayer/oracle.hpp"
#include "ljmayer/potentials.hpp"
#include "ljmayer/quad.hpp"
#include "ljmayer/radius.hpp"
#include "ljmayer/report.hpp"
#include "ljmayer/verify.hpp"
