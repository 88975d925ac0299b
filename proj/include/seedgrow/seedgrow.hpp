#pragma once

#include "image.hpp"
#include "kmeans.hpp"
#include "metrics.hpp"
#include "morphology.hpp"
#include "pgm.hpp"
#include "pipeline.hpp"
#include "preprocess.hpp"
#include "region_growing.hpp"
#include "seed_selection.hpp"
#include "synth.hpp"
