#pragma once
// Umbrella header.

#include "entroscope/corpus.hpp"
#include "entroscope/csv.hpp"
#include "entroscope/entropy.hpp"
#include "entroscope/fitting.hpp"
#include "entroscope/genmodel.hpp"
#include "entroscope/optimizer.hpp"
#include "entroscope/overlap.hpp"
#include "entroscope/parallel.hpp"
#include "entroscope/report.hpp"
#include "entroscope/stats.hpp"
#include "entroscope/temporal.hpp"
