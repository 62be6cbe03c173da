#pragma once

#include "glaucad/config.hpp"
#include "glaucad/contourlet.hpp"
#include "glaucad/dataset.hpp"
#include "glaucad/dtcwt.hpp"
#include "glaucad/dwt.hpp"
#include "glaucad/enhance.hpp"
#include "glaucad/error.hpp"
#include "glaucad/experiment.hpp"
#include "glaucad/features.hpp"
#include "glaucad/fft.hpp"
#include "glaucad/filters.hpp"
#include "glaucad/graphfeat.hpp"
#include "glaucad/histogram.hpp"
#include "glaucad/image_io.hpp"
#include "glaucad/model_io.hpp"
#include "glaucad/moments.hpp"
#include "glaucad/morphology.hpp"
#include "glaucad/neural.hpp"
#include "glaucad/parallel.hpp"
#include "glaucad/preprocess.hpp"
#include "glaucad/raster.hpp"
#include "glaucad/statfeat.hpp"
#include "glaucad/synthetic.hpp"
#include "glaucad/wavelets.hpp"
