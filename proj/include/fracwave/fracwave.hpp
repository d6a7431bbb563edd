#pragma once

#include "fracwave/config.hpp"
#include "fracwave/convergence.hpp"
#include "fracwave/csv.hpp"
#include "fracwave/drift.hpp"
#include "fracwave/fbm.hpp"
#include "fracwave/gaussian_stream.hpp"
#include "fracwave/noise_field.hpp"
#include "fracwave/sine_basis.hpp"
#include "fracwave/stepper.hpp"
#include "fracwave/time_grid.hpp"
