//! Exploration sessions and their JSON files under the data directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use ecluster::cluster_sets::ClusterDescription;
use ecluster::infinity_gon::ArcSetDescription;
use ecluster::ordered_line::Ladder;
use ecluster::polygon_an::Triangulation;
use serde::{Deserialize, Serialize};

use crate::error::WbError;
use crate::ops::{self, Explorable, MutationView};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HistoryEntry {
    pub at: String,
    pub change: MutationView,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Session {
    pub schema_version: u32,
    pub id: String,
    pub ladder: Ladder,
    pub initial: Explorable,
    pub current: Explorable,
    pub history: Vec<HistoryEntry>,
}

/// Body of `POST /session`.
#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CreateRequest {
    Polygon {
        n: i64,
        #[serde(default)]
        triangulation: Option<String>,
    },
    Cluster {
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        n: Option<i64>,
        #[serde(default)]
        cluster: Option<ClusterDescription>,
    },
    Infgon {
        arcs: ArcSetDescription,
    },
}

impl CreateRequest {
    pub fn initial(&self, ladder: &Ladder) -> Result<Explorable, WbError> {
        Ok(match self {
            CreateRequest::Polygon { n, triangulation } => {
                let t = match triangulation {
                    Some(text) => Triangulation::parse(*n, text)?,
                    None => Triangulation::fan(*n)?,
                };
                Explorable::Polygon { triangulation: t }
            }
            CreateRequest::Cluster { name, n, cluster } => {
                let c = match (cluster, name) {
                    (Some(c), _) => c.clone(),
                    (None, Some(name)) => ops::build_cluster(name, *n, ladder)?,
                    (None, None) => return Err(WbError::input("cluster session needs name or cluster")),
                };
                Explorable::Cluster { cluster: c }
            }
            CreateRequest::Infgon { arcs } => {
                arcs.validate()?;
                Explorable::Infgon { arcs: arcs.clone() }
            }
        })
    }
}

impl Session {
    pub fn new(id: String, ladder: Ladder, initial: Explorable) -> Self {
        Session { schema_version: ops::SCHEMA_VERSION, id, ladder, current: initial.clone(), initial, history: vec![] }
    }

    pub fn mutate(&mut self, at: &str) -> Result<(Explorable, MutationView), WbError> {
        let (next, view) = self.current.mutate(at, &self.ladder)?;
        self.current = next.clone();
        self.history.push(HistoryEntry { at: at.to_string(), change: view.clone() });
        Ok((next, view))
    }

    /// Recomputes the current object from the initial one and the history.
    pub fn replay(&self) -> Result<Explorable, WbError> {
        let mut cur = self.initial.clone();
        for h in &self.history {
            cur = cur.mutate(&h.at, &self.ladder)?.0;
        }
        Ok(cur)
    }

    pub fn undo(&mut self) -> Result<(), WbError> {
        if self.history.pop().is_none() {
            return Err(WbError::domain("EmptyHistory", "nothing to undo"));
        }
        self.current = self.replay()?;
        Ok(())
    }
}

/// Sessions kept in memory and mirrored to `<data dir>/<id>.json`.
pub struct Store {
    dir: PathBuf,
    sessions: RwLock<BTreeMap<String, Session>>,
}

impl Store {
    pub fn open(dir: &Path) -> Result<Self, WbError> {
        std::fs::create_dir_all(dir)?;
        let mut sessions = BTreeMap::new();
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                let s: Session = ops::read_json(&path)?;
                sessions.insert(s.id.clone(), s);
            }
        }
        Ok(Store { dir: dir.to_path_buf(), sessions: RwLock::new(sessions) })
    }

    fn save(&self, s: &Session) -> Result<(), WbError> {
        let tmp = self.dir.join(format!("{}.json.tmp", s.id));
        std::fs::write(&tmp, serde_json::to_vec_pretty(s).map_err(|e| WbError::Io(e.to_string()))?)?;
        std::fs::rename(tmp, self.dir.join(format!("{}.json", s.id)))?;
        Ok(())
    }

    pub fn create(&self, req: &CreateRequest, ladder: Ladder) -> Result<Session, WbError> {
        let initial = req.initial(&ladder)?;
        let mut map = self.sessions.write().expect("session lock");
        let next = map.keys().filter_map(|k| k.strip_prefix('s')?.parse::<u64>().ok()).max().map_or(1, |k| k + 1);
        let s = Session::new(format!("s{next}"), ladder, initial);
        self.save(&s)?;
        map.insert(s.id.clone(), s.clone());
        Ok(s)
    }

    pub fn get(&self, id: &str) -> Result<Session, WbError> {
        let map = self.sessions.read().expect("session lock");
        map.get(id).cloned().ok_or_else(|| WbError::NotFound(id.to_string()))
    }

    /// Runs `f` on the session under the writer lock and persists the result.
    pub fn update<T>(&self, id: &str, f: impl FnOnce(&mut Session) -> Result<T, WbError>) -> Result<(T, Session), WbError> {
        let mut map = self.sessions.write().expect("session lock");
        let s = map.get_mut(id).ok_or_else(|| WbError::NotFound(id.to_string()))?;
        let mut draft = s.clone();
        let out = f(&mut draft)?;
        self.save(&draft)?;
        *s = draft.clone();
        Ok((out, draft))
    }
}
