#pragma once

#include <trp/adversary.hpp>
#include <trp/core.hpp>
#include <trp/generate.hpp>
#include <trp/instance_io.hpp>
#include <trp/offline.hpp>
#include <trp/online.hpp>
#include <trp/quadratic.hpp>
#include <trp/scalar.hpp>
#include <trp/simulator.hpp>
#include <trp/strategy.hpp>
#include <trp/sweep.hpp>
#include <trp/trajectory.hpp>
