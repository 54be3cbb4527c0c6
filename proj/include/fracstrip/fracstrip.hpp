#pragma once
// Umbrella header for the whole library.

#include "fracstrip/analysis.hpp"
#include "fracstrip/budgets.hpp"
#include "fracstrip/catalog.hpp"
#include "fracstrip/core.hpp"
#include "fracstrip/domain.hpp"
#include "fracstrip/extension.hpp"
#include "fracstrip/params.hpp"
#include "fracstrip/quadrature.hpp"
#include "fracstrip/report.hpp"
#include "fracstrip/seminorms.hpp"
#include "fracstrip/spectral.hpp"
#include "fracstrip/transforms.hpp"
