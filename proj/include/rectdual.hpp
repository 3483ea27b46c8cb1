#pragma once

#include "rectdual/builder.hpp"
#include "rectdual/detector.hpp"
#include "rectdual/error.hpp"
#include "rectdual/generator.hpp"
#include "rectdual/geometry.hpp"
#include "rectdual/graph.hpp"
#include "rectdual/io.hpp"
#include "rectdual/pipeline.hpp"
#include "rectdual/solver.hpp"
#include "rectdual/svg.hpp"
#include "rectdual/verifier.hpp"
