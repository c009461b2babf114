#pragma once

#include "mrct/combine.hpp"
#include "mrct/extract.hpp"
#include "mrct/metrics.hpp"
#include "mrct/parallel.hpp"
#include "mrct/signal_io.hpp"
#include "mrct/signals.hpp"
#include "mrct/transforms.hpp"
#include "mrct/types.hpp"
#include "mrct/window_geometry.hpp"
