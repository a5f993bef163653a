#pragma once

#include "kickosc/config_io.hpp"
#include "kickosc/core.hpp"
#include "kickosc/csv.hpp"
#include "kickosc/error.hpp"
#include "kickosc/mat2.hpp"
#include "kickosc/observables.hpp"
#include "kickosc/oracle.hpp"
#include "kickosc/sweep.hpp"
#include "kickosc/trajectory.hpp"
#include "kickosc/transfer.hpp"
#include "kickosc/verify.hpp"
