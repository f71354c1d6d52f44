#pragma once

#include "tactile/core.hpp"
#include "tactile/dft.hpp"
#include "tactile/error.hpp"
#include "tactile/eval.hpp"
#include "tactile/features.hpp"
#include "tactile/learn/classifier.hpp"
#include "tactile/learn/knn.hpp"
#include "tactile/learn/standardizer.hpp"
#include "tactile/learn/svm.hpp"
#include "tactile/learn/tree.hpp"
#include "tactile/random.hpp"
#include "tactile/simulator.hpp"
#include "tactile/stats.hpp"
