//! C ABI over `orbichern`.
//!
//! Every fallible entry point returns an [`OcStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`oc_last_error_message`]. Handles are opaque and must be
//! released with the matching `*_free` function; strings returned as
//! `char *` are released with [`oc_string_free`].

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbichern::chern::{
    log_surface_from_ambient, nodal_surface_chern, plane_nc_curve_chern, stack_chern, NodalSurface,
    PlaneNodeCuspCurve,
};
use orbichern::config::{parse_config, SurfaceInput};
use orbichern::criteria::{
    bogomolov_stack, jet_h0_coefficient, nevanlinna_excess, nodal_surface_lhs, nodes_cusps_lhs,
    plane_pair_lhs, remark_form_lhs, theorem_a_lhs, NevanlinnaConfig, PlanePairConfig,
};
use orbichern::oracle::leading_coefficient;
use orbichern::scan::{minimal_passing, Family, ParamValue, ScanRequest, SweepRange};
use orbichern::{
    AmbientSurfaceData, ChernNumbers, CriterionVerdict, CurveComponent, IntersectionMatrix, Multiplicity,
    Rational, SmoothOrbifoldSurface,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    Internal = 4,
    Panic = 5,
}

/// Surface under construction: log or ambient Chern numbers plus boundary
/// components and their intersection matrix.
pub struct OcSurface {
    ambient: bool,
    c1_sq: Rational,
    c2: Rational,
    components: Vec<CurveComponent>,
    matrix: Vec<Vec<i64>>,
}

pub struct OcChern {
    inner: ChernNumbers,
}

pub struct OcVerdict {
    inner: CriterionVerdict,
    tag: CString,
    citation: CString,
}

/// Outcome of [`oc_scan_minimal`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OcScanResult {
    /// Whether some swept value satisfies the criterion.
    pub found: bool,
    /// Whether the minimal value is infinity.
    pub infinite: bool,
    /// The minimal value when `found` and not `infinite`.
    pub value: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(OcStatus, String);

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure(OcStatus::InvalidArgument, message.to_string())
    }
}

fn set_last_error(message: Option<String>) {
    let message = message.map(|m| CString::new(m.replace('\0', " ")).expect("nul bytes removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = message);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> OcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(None);
            OcStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(Some(message));
            status
        }
        Err(_) => {
            set_last_error(Some("panic inside orbichern".into()));
            OcStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(OcStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    non_null(p, what)?;
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(OcStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, Failure> {
    text.parse().map_err(|e| Failure::invalid(format!("{what}: {e}")))
}

/// `0` encodes an infinite multiplicity.
fn multiplicity(m: u64) -> Multiplicity {
    Multiplicity::finite(m).unwrap_or(Multiplicity::Infinite)
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("rendered values contain no NUL")
        .into_raw()
}

/// # Safety
/// `out` is a valid pointer to writable storage for `T`.
unsafe fn write_out<T>(out: *mut T, value: T) {
    out.write(value);
}

fn boxed_verdict(v: CriterionVerdict) -> *mut OcVerdict {
    let tag = CString::new(v.tag().as_str()).expect("static tag");
    let citation = CString::new(v.tag().citation()).expect("static citation");
    Box::into_raw(Box::new(OcVerdict {
        inner: v,
        tag,
        citation,
    }))
}

impl OcSurface {
    fn build(&self) -> Result<SurfaceInput, Failure> {
        let matrix = IntersectionMatrix::from_rows(self.matrix.clone());
        let components = self.components.clone();
        let (c1, c2) = (self.c1_sq.clone(), self.c2.clone());
        if self.ambient {
            AmbientSurfaceData::new(c1, c2, components, matrix)
                .map(SurfaceInput::Ambient)
                .map_err(Failure::invalid)
        } else {
            SmoothOrbifoldSurface::new(c1, c2, components, matrix)
                .map(SurfaceInput::Log)
                .map_err(Failure::invalid)
        }
    }
}

/// Message of the last failed call on this thread, or null after a
/// successful call. Valid until the next call into the library.
#[no_mangle]
pub extern "C" fn oc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn oc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn oc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

unsafe fn surface_new(
    ambient: bool,
    c1_sq: *const c_char,
    c2: *const c_char,
    out: *mut *mut OcSurface,
) -> OcStatus {
    guard(|| {
        non_null(out, "out")?;
        let c1_sq = parse_rational(read_str(c1_sq, "c1_sq")?, "c1_sq")?;
        let c2 = parse_rational(read_str(c2, "c2")?, "c2")?;
        let surface = OcSurface {
            ambient,
            c1_sq,
            c2,
            components: Vec::new(),
            matrix: Vec::new(),
        };
        write_out(out, Box::into_raw(Box::new(surface)));
        Ok(())
    })
}

/// New surface from log Chern numbers given as `"p/q"` strings.
///
/// # Safety
/// String arguments are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_surface_new_log(
    log_c1_sq: *const c_char,
    log_c2: *const c_char,
    out: *mut *mut OcSurface,
) -> OcStatus {
    surface_new(false, log_c1_sq, log_c2, out)
}

/// New surface from the Chern numbers of the ambient surface.
///
/// # Safety
/// String arguments are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_surface_new_ambient(
    c1_sq: *const c_char,
    c2: *const c_char,
    out: *mut *mut OcSurface,
) -> OcStatus {
    surface_new(true, c1_sq, c2, out)
}

/// Parses the surface part of a TOML configuration.
///
/// # Safety
/// `text` is NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_surface_from_config(text: *const c_char, out: *mut *mut OcSurface) -> OcStatus {
    guard(|| {
        non_null(out, "out")?;
        let cfg = parse_config(read_str(text, "text")?).map_err(Failure::invalid)?;
        let input = cfg
            .surface
            .ok_or_else(|| Failure::invalid("configuration has no [surface] block"))?;
        let surface = match input {
            SurfaceInput::Log(s) => OcSurface {
                ambient: false,
                c1_sq: s.log_c1_sq().clone(),
                c2: s.log_c2().clone(),
                components: s.components().to_vec(),
                matrix: s.intersections().rows().to_vec(),
            },
            SurfaceInput::Ambient(a) => OcSurface {
                ambient: true,
                c1_sq: a.c1_sq().clone(),
                c2: a.c2().clone(),
                components: a.components().to_vec(),
                matrix: a.intersections().rows().to_vec(),
            },
        };
        write_out(out, Box::into_raw(Box::new(surface)));
        Ok(())
    })
}

/// Appends a boundary component; `multiplicity_value == 0` means infinite. The
/// intersection matrix grows by a zero row and column.
///
/// # Safety
/// `surface` is a live handle; `label` is null or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn oc_surface_add_component(
    surface: *mut OcSurface,
    label: *const c_char,
    genus: u32,
    multiplicity_value: u64,
) -> OcStatus {
    guard(|| {
        non_null(surface, "surface")?;
        let s = &mut *surface;
        let label = if label.is_null() {
            format!("C{}", s.components.len() + 1)
        } else {
            read_str(label, "label")?.to_string()
        };
        s.components.push(CurveComponent::new(
            label,
            genus,
            multiplicity(multiplicity_value),
        ));
        let n = s.components.len();
        for row in &mut s.matrix {
            row.resize(n, 0);
        }
        s.matrix.push(vec![0; n]);
        Ok(())
    })
}

/// Sets `C_i . C_j` (and `C_j . C_i`).
///
/// # Safety
/// `surface` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_surface_set_intersection(
    surface: *mut OcSurface,
    i: usize,
    j: usize,
    value: i64,
) -> OcStatus {
    guard(|| {
        non_null(surface, "surface")?;
        let s = &mut *surface;
        let n = s.components.len();
        if i >= n || j >= n {
            return Err(Failure::invalid(format!(
                "index ({i}, {j}) out of range for {n} components"
            )));
        }
        s.matrix[i][j] = value;
        s.matrix[j][i] = value;
        Ok(())
    })
}

/// # Safety
/// `surface` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_surface_free(surface: *mut OcSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// Chern numbers of the stack over the surface.
///
/// # Safety
/// `surface` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_surface_stack_chern(
    surface: *const OcSurface,
    out: *mut *mut OcChern,
) -> OcStatus {
    guard(|| {
        non_null(surface, "surface")?;
        non_null(out, "out")?;
        let inner = stack_chern(&(*surface).build()?.surface());
        write_out(out, Box::into_raw(Box::new(OcChern { inner })));
        Ok(())
    })
}

/// Stack Chern numbers of a plane curve with `n` nodes and `c` cusps
/// weighted by `m` in `2..=5`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_plane_nc_curve_chern(
    d: i64,
    n: i64,
    c: i64,
    m: i64,
    out: *mut *mut OcChern,
) -> OcStatus {
    guard(|| {
        non_null(out, "out")?;
        let curve = PlaneNodeCuspCurve::new(d, n, c, m).map_err(Failure::invalid)?;
        let inner = plane_nc_curve_chern(&curve);
        write_out(out, Box::into_raw(Box::new(OcChern { inner })));
        Ok(())
    })
}

/// Stack Chern numbers of a degree `d` surface in `P^3` with `l` nodes.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_nodal_surface_chern(d: i64, l: i64, out: *mut *mut OcChern) -> OcStatus {
    guard(|| {
        non_null(out, "out")?;
        let surface = NodalSurface::new(d, l).map_err(Failure::invalid)?;
        let inner = nodal_surface_chern(&surface);
        write_out(out, Box::into_raw(Box::new(OcChern { inner })));
        Ok(())
    })
}

/// `c1^2` as a newly allocated `"p/q"` string.
///
/// # Safety
/// `chern` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_chern_c1_sq(chern: *const OcChern) -> *mut c_char {
    chern
        .as_ref()
        .map_or(ptr::null_mut(), |c| owned_string(c.inner.c1_sq.to_string()))
}

/// `c2` as a newly allocated `"p/q"` string.
///
/// # Safety
/// `chern` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_chern_c2(chern: *const OcChern) -> *mut c_char {
    chern
        .as_ref()
        .map_or(ptr::null_mut(), |c| owned_string(c.inner.c2.to_string()))
}

/// # Safety
/// `chern` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_chern_free(chern: *mut OcChern) {
    if !chern.is_null() {
        drop(Box::from_raw(chern));
    }
}

/// Exact left-hand side as a newly allocated `"p/q"` string.
///
/// # Safety
/// `verdict` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_verdict_lhs(verdict: *const OcVerdict) -> *mut c_char {
    verdict
        .as_ref()
        .map_or(ptr::null_mut(), |v| owned_string(v.inner.lhs().to_string()))
}

/// Whether the left-hand side is strictly positive. False for null.
///
/// # Safety
/// `verdict` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_verdict_holds(verdict: *const OcVerdict) -> bool {
    verdict.as_ref().is_some_and(|v| v.inner.holds())
}

/// Criterion tag, owned by the verdict.
///
/// # Safety
/// `verdict` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_verdict_tag(verdict: *const OcVerdict) -> *const c_char {
    verdict.as_ref().map_or(ptr::null(), |v| v.tag.as_ptr())
}

/// Statement of the criterion, owned by the verdict.
///
/// # Safety
/// `verdict` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_verdict_citation(verdict: *const OcVerdict) -> *const c_char {
    verdict.as_ref().map_or(ptr::null(), |v| v.citation.as_ptr())
}

/// # Safety
/// `verdict` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn oc_verdict_free(verdict: *mut OcVerdict) {
    if !verdict.is_null() {
        drop(Box::from_raw(verdict));
    }
}

unsafe fn verdict_out(
    out: *mut *mut OcVerdict,
    f: impl FnOnce() -> Result<CriterionVerdict, Failure>,
) -> OcStatus {
    guard(|| {
        non_null(out, "out")?;
        let v = f()?;
        write_out(out, boxed_verdict(v));
        Ok(())
    })
}

/// # Safety
/// `surface` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_theorem_a(surface: *const OcSurface, out: *mut *mut OcVerdict) -> OcStatus {
    verdict_out(out, || {
        non_null(surface, "surface")?;
        Ok(theorem_a_lhs(&(*surface).build()?.surface()))
    })
}

/// Ambient form of Theorem A; the surface must have been created with
/// [`oc_surface_new_ambient`].
///
/// # Safety
/// `surface` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_remark_form(surface: *const OcSurface, out: *mut *mut OcVerdict) -> OcStatus {
    verdict_out(out, || {
        non_null(surface, "surface")?;
        match (*surface).build()? {
            SurfaceInput::Ambient(a) => Ok(remark_form_lhs(&a)),
            SurfaceInput::Log(_) => Err(Failure::invalid("the ambient form needs ambient Chern numbers")),
        }
    })
}

/// `c1^2 - c2` of the stack.
///
/// # Safety
/// `chern` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_bogomolov_stack(chern: *const OcChern, out: *mut *mut OcVerdict) -> OcStatus {
    verdict_out(out, || {
        non_null(chern, "chern")?;
        Ok(bogomolov_stack(&(*chern).inner))
    })
}

/// Two smooth plane curves; a multiplicity of `0` means infinite.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_plane_pair(
    d1: i64,
    d2: i64,
    m1: u64,
    m2: u64,
    out: *mut *mut OcVerdict,
) -> OcStatus {
    verdict_out(out, || {
        let cfg =
            PlanePairConfig::new(d1, d2, multiplicity(m1), multiplicity(m2)).map_err(Failure::invalid)?;
        Ok(plane_pair_lhs(&cfg))
    })
}

/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_nodes_cusps(d: i64, n: i64, c: i64, out: *mut *mut OcVerdict) -> OcStatus {
    verdict_out(out, || nodes_cusps_lhs(d, n, c).map_err(Failure::invalid))
}

/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_nodal_surface(d: i64, l: i64, out: *mut *mut OcVerdict) -> OcStatus {
    verdict_out(out, || nodal_surface_lhs(d, l).map_err(Failure::invalid))
}

/// `k`-jet criterion (`k` is 2 or 3) on a nodal surface.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_jet_h0(k: u32, d: i64, l: i64, out: *mut *mut OcVerdict) -> OcStatus {
    verdict_out(out, || {
        jet_h0_coefficient(k, d, l)
            .map(|j| j.verdict)
            .map_err(Failure::invalid)
    })
}

/// Multiplicities of points on `P^1`; `0` means infinite.
///
/// # Safety
/// `mults` points to `len` readable values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_nevanlinna(mults: *const u64, len: usize, out: *mut *mut OcVerdict) -> OcStatus {
    verdict_out(out, || {
        non_null(mults, "mults")?;
        let ms = std::slice::from_raw_parts(mults, len)
            .iter()
            .map(|&m| multiplicity(m))
            .collect();
        let cfg = NevanlinnaConfig::new(ms).map_err(Failure::invalid)?;
        Ok(nevanlinna_excess(&cfg))
    })
}

/// Leading coefficient of `chi` of the `k`-jet bundle, rendered like
/// `85/6531840*c1^2 - 49/6531840*c2`, and its degree in `N`.
///
/// # Safety
/// `form_out` and `degree_out` are writable.
#[no_mangle]
pub unsafe extern "C" fn oc_oracle_leading(
    k: u32,
    form_out: *mut *mut c_char,
    degree_out: *mut u32,
) -> OcStatus {
    guard(|| {
        non_null(form_out, "form_out")?;
        non_null(degree_out, "degree_out")?;
        let (form, degree) = leading_coefficient(k).map_err(|e| {
            let status = if e.is_internal() {
                OcStatus::Internal
            } else {
                OcStatus::InvalidArgument
            };
            Failure(status, e.to_string())
        })?;
        write_out(form_out, owned_string(form.to_common_denominator_string()));
        write_out(degree_out, degree);
        Ok(())
    })
}

/// Smallest swept value for which the family's criterion holds.
///
/// `family` is one of `plane-pair`, `nodes-cusps`, `nodal-surface`,
/// `nodal-jet`; `fixed` lists the other parameters as `name=value` pairs
/// separated by commas (for example `"d1=5,d2=5"`); `sweep` is
/// `name=start..end`, optionally followed by `,inf`.
///
/// # Safety
/// String arguments are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn oc_scan_minimal(
    family: *const c_char,
    fixed: *const c_char,
    sweep: *const c_char,
    out: *mut OcScanResult,
) -> OcStatus {
    guard(|| {
        non_null(out, "out")?;
        let family: Family = read_str(family, "family")?.parse().map_err(Failure::invalid)?;
        let mut params = BTreeMap::new();
        for pair in read_str(fixed, "fixed")?
            .split(',')
            .filter(|p| !p.trim().is_empty())
        {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| Failure::invalid(format!("expected name=value, got `{pair}`")))?;
            let value: ParamValue = value.parse().map_err(Failure::invalid)?;
            params.insert(name.trim().to_string(), value);
        }
        let sweep: SweepRange = read_str(sweep, "sweep")?.parse().map_err(Failure::invalid)?;
        let req = ScanRequest::new(family, params, sweep, None).map_err(Failure::invalid)?;
        let result = match minimal_passing(&req).map_err(Failure::invalid)? {
            None => OcScanResult {
                found: false,
                infinite: false,
                value: 0,
            },
            Some(ParamValue::Infinity) => OcScanResult {
                found: true,
                infinite: true,
                value: 0,
            },
            Some(ParamValue::Int(v)) => OcScanResult {
                found: true,
                infinite: false,
                value: v,
            },
        };
        write_out(out, result);
        Ok(())
    })
}

/// Log Chern numbers of an ambient surface as `"p/q"` strings.
///
/// # Safety
/// `surface` is a live ambient handle; both out-pointers are writable.
#[no_mangle]
pub unsafe extern "C" fn oc_surface_log_chern(
    surface: *const OcSurface,
    log_c1_sq_out: *mut *mut c_char,
    log_c2_out: *mut *mut c_char,
) -> OcStatus {
    guard(|| {
        non_null(surface, "surface")?;
        non_null(log_c1_sq_out, "log_c1_sq_out")?;
        non_null(log_c2_out, "log_c2_out")?;
        let s = match (*surface).build()? {
            SurfaceInput::Ambient(a) => log_surface_from_ambient(&a),
            SurfaceInput::Log(s) => s,
        };
        write_out(log_c1_sq_out, owned_string(s.log_c1_sq().to_string()));
        write_out(log_c2_out, owned_string(s.log_c2().to_string()));
        Ok(())
    })
}
