#pragma once

#include "conc/centrality.hpp"
#include "conc/comparators.hpp"
#include "conc/error.hpp"
#include "conc/evaluation.hpp"
#include "conc/ingest.hpp"
#include "conc/network.hpp"
#include "conc/parallel.hpp"
#include "conc/report.hpp"
#include "conc/score_table.hpp"
