#pragma once

#include "nottingham/bounds.hpp"
#include "nottingham/errors.hpp"
#include "nottingham/generic.hpp"
#include "nottingham/identities.hpp"
#include "nottingham/matrixcalc.hpp"
#include "nottingham/multipoly.hpp"
#include "nottingham/prime_field.hpp"
#include "nottingham/ratfunc.hpp"
#include "nottingham/report.hpp"
#include "nottingham/series.hpp"
#include "nottingham/suites.hpp"
