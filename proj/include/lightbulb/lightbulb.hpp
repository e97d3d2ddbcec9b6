// lightbulb.hpp - umbrella header.
#pragma once

#include "lightbulb/clubbed_binomial.hpp"
#include "lightbulb/lightbulb_exact.hpp"
#include "lightbulb/parity_class.hpp"
#include "lightbulb/pmf.hpp"
#include "lightbulb/random.hpp"
#include "lightbulb/rational.hpp"
#include "lightbulb/simulator.hpp"
#include "lightbulb/stein.hpp"
#include "lightbulb/tv_verify.hpp"
