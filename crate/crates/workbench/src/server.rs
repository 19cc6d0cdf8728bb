//! HTTP serve mode.

use std::sync::Arc;

use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use ecluster::ordered_line::Ladder;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::WbError;
use crate::ops;
use crate::session::{CreateRequest, Store};

pub struct AppState {
    pub store: Store,
    pub ladder: Ladder,
}

impl IntoResponse for WbError {
    fn into_response(self) -> Response {
        let status = match &self {
            WbError::Input(_) => StatusCode::BAD_REQUEST,
            WbError::Domain { .. } => StatusCode::CONFLICT,
            WbError::NotFound(_) => StatusCode::NOT_FOUND,
            WbError::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let body = json!({ "schemaVersion": ops::SCHEMA_VERSION, "error": self.kind(), "message": self.to_string() });
        (status, Json(body)).into_response()
    }
}

type Reply = Result<Json<Value>, WbError>;

fn parse_body<T: for<'de> Deserialize<'de>>(body: &str) -> Result<T, WbError> {
    Ok(serde_json::from_str(body)?)
}

async fn create(State(app): State<Arc<AppState>>, body: String) -> Reply {
    let req: CreateRequest = parse_body(&body)?;
    let s = app.store.create(&req, app.ladder.clone())?;
    Ok(Json(ops::envelope(&s)?))
}

async fn show(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Reply {
    Ok(Json(ops::envelope(&app.store.get(&id)?)?))
}

#[derive(Deserialize)]
struct MutateRequest {
    at: String,
}

async fn mutate(State(app): State<Arc<AppState>>, Path(id): Path<String>, body: String) -> Reply {
    let req: MutateRequest = parse_body(&body)?;
    let ((next, view), s) = app.store.update(&id, |s| s.mutate(&req.at))?;
    let mut doc = ops::mutation_document(&next, &view)?;
    doc["session"] = ops::envelope(&s)?;
    Ok(Json(doc))
}

async fn undo(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Reply {
    let ((), s) = app.store.update(&id, |s| s.undo())?;
    Ok(Json(ops::envelope(&s)?))
}

async fn embedding(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Reply {
    let s = app.store.get(&id)?;
    let c = s.current.embedding(&s.ladder)?;
    let points: Vec<Value> = ops::listed_elements(&c)
        .iter()
        .map(|m| json!({ "label": m.to_string(), "point": ecluster::ar_space::gamma_b_in_chart(m, c.chart, 0) }))
        .collect();
    Ok(Json(ops::envelope(&json!({ "cluster": c, "points": points }))?))
}

async fn arspace_svg(State(app): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, WbError> {
    let s = app.store.get(&id)?;
    let c = s.current.embedding(&s.ladder)?;
    let svg = ops::strip_svg(&c, s.history.last().map(|h| &h.change));
    Ok(([(header::CONTENT_TYPE, "image/svg+xml")], svg).into_response())
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/session", post(create))
        .route("/session/{id}", get(show))
        .route("/session/{id}/mutate", post(mutate))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/embedding", get(embedding))
        .route("/session/{id}/arspace-svg", get(arspace_svg))
        .with_state(state)
}

pub async fn serve(state: Arc<AppState>, port: u16) -> Result<(), WbError> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await?;
    Ok(())
}
