#pragma once

#include <frontal/error.hpp>
#include <frontal/jet.hpp>
#include <frontal/expr.hpp>
#include <frontal/linalg.hpp>
#include <frontal/curve.hpp>
#include <frontal/surface_grid.hpp>
#include <frontal/frontal_analysis.hpp>
#include <frontal/moving_frames.hpp>
#include <frontal/ruled_maps.hpp>
#include <frontal/corpus.hpp>
#include <frontal/config.hpp>
#include <frontal/export.hpp>
