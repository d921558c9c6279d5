//! CoNLL-U documents in, knowledge graph out.

use std::io::BufReader;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::config::PipelineConfig;
use crate::ingest::{self, Document, IngestError};
use crate::kgraph::{GraphDelta, GraphError, KnowledgeGraph};
use crate::svo::Extractor;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{path}: {source}")]
    Ingest { path: PathBuf, source: IngestError },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IngestStats {
    pub documents: usize,
    pub sentences: usize,
    pub svos: usize,
    pub assertions: usize,
    pub nodes: usize,
    pub edges: usize,
}

pub struct Pipeline {
    pub config: PipelineConfig,
    extractor: Extractor,
}

impl Pipeline {
    pub fn new(config: PipelineConfig) -> Self {
        let extractor = Extractor::new(config.deontic.clone());
        Self { config, extractor }
    }

    pub fn empty_graph(&self) -> KnowledgeGraph {
        KnowledgeGraph::new(self.config.authority.clone(), self.config.promotion_threshold)
    }

    /// Extracts one document and adds its statements to `graph`.
    pub fn ingest_document(
        &self,
        graph: &mut KnowledgeGraph,
        document: &Document,
        stats: &mut IngestStats,
    ) -> Result<GraphDelta, GraphError> {
        let ex = self.extractor.extract_document(document);
        let mut delta = GraphDelta::default();
        for t in &ex.triplets {
            delta.merge(graph.add_svo(t, &document.provenance)?);
        }
        for a in &ex.assertions {
            delta.merge(graph.add_copula(a, &document.provenance)?);
        }
        stats.documents += 1;
        stats.sentences += document.sentences.len();
        stats.svos += ex.triplets.len();
        stats.assertions += ex.assertions.len();
        Ok(delta)
    }

    /// Builds a graph from documents, then records contradictions.
    pub fn build(&self, documents: &[Document]) -> Result<(KnowledgeGraph, IngestStats), GraphError> {
        let mut graph = self.empty_graph();
        let mut stats = IngestStats::default();
        for doc in documents {
            self.ingest_document(&mut graph, doc, &mut stats)?;
        }
        graph.detect_contradictions()?;
        stats.nodes = graph.node_count();
        stats.edges = graph.edge_count();
        Ok((graph, stats))
    }

    /// Parses every file (checking source levels against the config) and
    /// builds one graph. Fails on the first error.
    pub fn build_from_paths<P: AsRef<Path>>(&self, paths: &[P]) -> Result<(KnowledgeGraph, IngestStats), PipelineError> {
        let mut documents = Vec::new();
        for p in paths {
            let path = p.as_ref();
            let err = |source| PipelineError::Ingest { path: path.to_path_buf(), source };
            let file = std::fs::File::open(path).map_err(|e| err(IngestError::Io(e)))?;
            documents.extend(ingest::parse_conllu_checked(BufReader::new(file), &self.config.authority).map_err(err)?);
        }
        Ok(self.build(&documents)?)
    }
}

impl Default for Pipeline {
    fn default() -> Self {
        Self::new(PipelineConfig::default())
    }
}
