#pragma once

#include <dlab/core.hpp>
#include <dlab/cutoffs.hpp>
#include <dlab/dimension.hpp>
#include <dlab/errors.hpp>
#include <dlab/io.hpp>
#include <dlab/kernels.hpp>
#include <dlab/maximal.hpp>
#include <dlab/parallel.hpp>
#include <dlab/propagator.hpp>
#include <dlab/quadrature.hpp>
#include <dlab/regression.hpp>
#include <dlab/sharpness.hpp>
