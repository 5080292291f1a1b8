//! JSON-over-HTTP session API under `/v1`.
//!
//! | method | route | body |
//! |---|---|---|
//! | POST | `/v1/session` | `{b}`, `{bt, vars?}` or `{b, data}`; optional `max_terms` |
//! | GET | `/v1/session/{id}` | |
//! | POST | `/v1/session/{id}/mutate` | `{k}`, one-based |
//! | POST | `/v1/session/{id}/undo` | |
//! | POST | `/v1/session/{id}/goto` | `{node}` |
//! | GET | `/v1/session/{id}/graph` | |
//!
//! Errors are `{"error": message}` with status 404 for an unknown session,
//! 400 for malformed input or a bad direction and 409 for an exhausted
//! budget or an undo at the initial seed.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use tower_http::cors::CorsLayer;

use crate::input::SeedInput;
use crate::session::{Session, SessionError};
use crate::CliError;

pub struct AppState {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    next_id: AtomicU64,
    max_terms: usize,
}

impl AppState {
    pub fn new(max_terms: usize) -> Arc<AppState> {
        Arc::new(AppState {
            sessions: RwLock::new(HashMap::new()),
            next_id: AtomicU64::new(1),
            max_terms,
        })
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        self.sessions
            .read()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::NotFound(id.into()))
    }
}

struct ApiError(StatusCode, String);

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match &e {
            SessionError::NotFound(_) => StatusCode::NOT_FOUND,
            SessionError::UnknownNode(_) => StatusCode::BAD_REQUEST,
            SessionError::AtRoot => StatusCode::CONFLICT,
            SessionError::Cli(CliError::Input(_)) => StatusCode::BAD_REQUEST,
            SessionError::Cli(CliError::Budget(_)) => StatusCode::CONFLICT,
            SessionError::Cli(CliError::Verification(_)) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError(status, e.to_string())
    }
}

impl From<CliError> for ApiError {
    fn from(e: CliError) -> Self {
        SessionError::from(e).into()
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({"error": self.1}))).into_response()
    }
}

type ApiResult = Result<(StatusCode, Json<Value>), ApiError>;

fn parse<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError(StatusCode::BAD_REQUEST, format!("invalid request body: {e}")))
}

/// Runs `f` on the locked session in a blocking task, so that mutations of
/// one session are serialized and do not stall the runtime.
async fn with_session<F>(state: &AppState, id: &str, f: F) -> Result<Value, ApiError>
where
    F: FnOnce(&mut Session) -> Result<Value, SessionError> + Send + 'static,
{
    let session = state.session(id)?;
    tokio::task::spawn_blocking(move || {
        let mut s = session
            .lock()
            .map_err(|_| ApiError(StatusCode::INTERNAL_SERVER_ERROR, "session poisoned".into()))?;
        f(&mut s).map_err(ApiError::from)
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
}

async fn create(State(state): State<Arc<AppState>>, body: Bytes) -> ApiResult {
    let v: Value = parse(&body)?;
    let input = SeedInput::from_value(&v)?;
    let max_terms = match v.get("max_terms") {
        None | Some(Value::Null) => state.max_terms,
        Some(m) => m
            .as_u64()
            .map(|m| (m as usize).min(state.max_terms))
            .ok_or_else(|| ApiError(StatusCode::BAD_REQUEST, "max_terms must be a positive integer".into()))?,
    };
    let id = format!("s{}", state.next_id.fetch_add(1, Ordering::Relaxed));
    let sid = id.clone();
    let session = tokio::task::spawn_blocking(move || Session::new(sid, &input, max_terms))
        .await
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))??;
    let snap = session.snapshot();
    state
        .sessions
        .write()
        .expect("session map lock")
        .insert(id, Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(snap)))
}

async fn show(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let v = with_session(&state, &id, |s| Ok(s.snapshot())).await?;
    Ok((StatusCode::OK, Json(v)))
}

#[derive(Deserialize)]
struct MutateBody {
    k: usize,
}

async fn mutate(State(state): State<Arc<AppState>>, Path(id): Path<String>, body: Bytes) -> ApiResult {
    state.session(&id)?;
    let MutateBody { k } = parse(&body)?;
    let v = with_session(&state, &id, move |s| {
        let n = s.current().n();
        if k == 0 || k > n {
            return Err(CliError::Input(format!("direction {k} outside 1..={n}")).into());
        }
        s.mutate(k - 1)?;
        Ok(s.snapshot())
    })
    .await?;
    Ok((StatusCode::OK, Json(v)))
}

async fn undo(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let v = with_session(&state, &id, |s| {
        s.undo()?;
        Ok(s.snapshot())
    })
    .await?;
    Ok((StatusCode::OK, Json(v)))
}

#[derive(Deserialize)]
struct GotoBody {
    node: usize,
}

async fn goto(State(state): State<Arc<AppState>>, Path(id): Path<String>, body: Bytes) -> ApiResult {
    state.session(&id)?;
    let GotoBody { node } = parse(&body)?;
    let v = with_session(&state, &id, move |s| {
        s.goto(node)?;
        Ok(s.snapshot())
    })
    .await?;
    Ok((StatusCode::OK, Json(v)))
}

async fn graph(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> ApiResult {
    let v = with_session(&state, &id, |s| Ok(s.graph())).await?;
    Ok((StatusCode::OK, Json(v)))
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/v1/session", post(create))
        .route("/v1/session/{id}", get(show))
        .route("/v1/session/{id}/mutate", post(mutate))
        .route("/v1/session/{id}/undo", post(undo))
        .route("/v1/session/{id}/goto", post(goto))
        .route("/v1/session/{id}/graph", get(graph))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

/// Serves the API until interrupted.
pub async fn serve(addr: SocketAddr, max_terms: usize) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}/v1", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(max_terms)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
