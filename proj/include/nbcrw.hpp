#pragma once

#include "nbcrw/error.hpp"
#include "nbcrw/generators.hpp"
#include "nbcrw/graph.hpp"
#include "nbcrw/hitting.hpp"
#include "nbcrw/nb_centrality.hpp"
#include "nbcrw/random.hpp"
#include "nbcrw/rose.hpp"
#include "nbcrw/simulate.hpp"
#include "nbcrw/spectral.hpp"
#include "nbcrw/version.hpp"
#include "nbcrw/walks.hpp"
