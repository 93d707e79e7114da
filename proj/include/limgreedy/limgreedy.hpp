#pragma once

#include "limgreedy/bounds.hpp"
#include "limgreedy/core.hpp"
#include "limgreedy/csv.hpp"
#include "limgreedy/errors.hpp"
#include "limgreedy/experiment.hpp"
#include "limgreedy/graph_gen.hpp"
#include "limgreedy/greedy.hpp"
#include "limgreedy/info_dag.hpp"
#include "limgreedy/objectives.hpp"
#include "limgreedy/ratio.hpp"
#include "limgreedy/rng.hpp"
#include "limgreedy/verify.hpp"
