#pragma once

#include "hkqa/answering.hpp"
#include "hkqa/doc_index.hpp"
#include "hkqa/evaluator.hpp"
#include "hkqa/graph_io.hpp"
#include "hkqa/graph_store.hpp"
#include "hkqa/gst.hpp"
#include "hkqa/quasi_graph.hpp"
#include "hkqa/question_parser.hpp"
#include "hkqa/similarity.hpp"
#include "hkqa/text.hpp"
