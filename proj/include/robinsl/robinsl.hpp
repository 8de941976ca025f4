#pragma once

#include "robinsl/errors.hpp"
#include "robinsl/potential.hpp"
#include "robinsl/eigensolver.hpp"
#include "robinsl/fd_oracle.hpp"
#include "robinsl/f_map.hpp"
#include "robinsl/extremals.hpp"
#include "robinsl/verify.hpp"
