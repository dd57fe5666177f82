//! C interface.
//!
//! Objects are opaque handles released with their `_free` function. Every
//! call returns a [`PlStatus`]; on failure a description is available from
//! [`pl_last_error`] on the same thread. Strings returned through out
//! parameters are owned by the caller and released with [`pl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pathlike::canon::canonical_code;
use pathlike::config::LinearConfiguration;
use pathlike::decision::{decide_tree, witness_is_valid, DecideOptions, Outcome};
use pathlike::lattice::enumerate_path_like_trees;
use pathlike::tree::Tree;

/// Opaque tree handle.
pub struct PlTree(Tree);

/// Opaque linear configuration handle.
pub struct PlWitness(LinearConfiguration);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Decide = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlVerdict {
    No = 0,
    Yes = 1,
    /// The tree lies outside the chain criterion; retry with the oracle.
    Unsupported = 2,
    /// A certificate exists but no witness could be built.
    Unassembled = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), (PlStatus, String)>) -> PlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PlStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PlStatus::Panic
        }
    }
}

unsafe fn text_arg<'a>(p: *const c_char) -> Result<&'a str, (PlStatus, String)> {
    if p.is_null() {
        return Err((PlStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (PlStatus::InvalidUtf8, e.to_string()))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, (PlStatus, String)> {
    p.as_ref().ok_or_else(|| (PlStatus::NullPointer, "null handle".into()))
}

unsafe fn out_arg<'a, T>(p: *mut T) -> Result<&'a mut T, (PlStatus, String)> {
    p.as_mut().ok_or_else(|| (PlStatus::NullPointer, "null output pointer".into()))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn pl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn pl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses the tree text format (`order` line, then `u v` edge lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_tree_parse(text: *const c_char, out: *mut *mut PlTree) -> PlStatus {
    guard(|| {
        let out = out_arg(out)?;
        let t = Tree::parse(text_arg(text)?).map_err(|e| (PlStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(PlTree(t)));
        Ok(())
    })
}

/// # Safety
/// `t` must be null or a handle from [`pl_tree_parse`].
#[no_mangle]
pub unsafe extern "C" fn pl_tree_free(t: *mut PlTree) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a valid tree handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_tree_order(t: *const PlTree, out: *mut usize) -> PlStatus {
    guard(|| {
        *out_arg(out)? = ref_arg(t)?.0.order();
        Ok(())
    })
}

/// Canonical code; equal codes mean isomorphic trees.
///
/// # Safety
/// `t` must be a valid tree handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_tree_canonical_code(t: *const PlTree, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let code = canonical_code(&ref_arg(t)?.0);
        *out_arg(out)? = owned_string(code.as_str().to_string());
        Ok(())
    })
}

/// Decides path-likeness. With `oracle` nonzero the answer comes from
/// enumeration; `strict` restricts the degree-4 rule to one degree-4
/// vertex. When `witness` is non-null it receives a handle on a yes
/// answer and null otherwise.
///
/// # Safety
/// `t` must be a valid tree handle; `verdict` a valid pointer; `witness`
/// null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_decide(
    t: *const PlTree,
    oracle: i32,
    strict: i32,
    verdict: *mut PlVerdict,
    witness: *mut *mut PlWitness,
) -> PlStatus {
    guard(|| {
        let tree = &ref_arg(t)?.0;
        let verdict = out_arg(verdict)?;
        let opts = DecideOptions { oracle: oracle != 0, strict: strict != 0, ..Default::default() };
        let d = decide_tree(tree, opts).map_err(|e| (PlStatus::Decide, e.to_string()))?;
        *verdict = match d.outcome {
            Outcome::Yes => PlVerdict::Yes,
            Outcome::No => PlVerdict::No,
            Outcome::Unsupported => PlVerdict::Unsupported,
            Outcome::Unassembled => PlVerdict::Unassembled,
        };
        if let Some(w) = witness.as_mut() {
            *w = d.witness.map_or(ptr::null_mut(), |lc| Box::into_raw(Box::new(PlWitness(lc))));
        }
        Ok(())
    })
}

/// Parses the witness text format (`paths` line, then `edge l i j` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_witness_parse(text: *const c_char, out: *mut *mut PlWitness) -> PlStatus {
    guard(|| {
        let out = out_arg(out)?;
        let w = LinearConfiguration::parse_witness(text_arg(text)?).map_err(|e| (PlStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(PlWitness(w)));
        Ok(())
    })
}

/// # Safety
/// `w` must be a valid witness handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_witness_to_text(w: *const PlWitness, out: *mut *mut c_char) -> PlStatus {
    guard(|| {
        let text = ref_arg(w)?.0.to_witness_text();
        *out_arg(out)? = owned_string(text);
        Ok(())
    })
}

/// Sets `valid` to 1 when `w` is a proper configuration of a tree
/// isomorphic to `t`, else 0.
///
/// # Safety
/// `w` and `t` must be valid handles and `valid` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_witness_check(w: *const PlWitness, t: *const PlTree, valid: *mut i32) -> PlStatus {
    guard(|| {
        let ok = witness_is_valid(&ref_arg(w)?.0, &ref_arg(t)?.0);
        *out_arg(valid)? = i32::from(ok);
        Ok(())
    })
}

/// # Safety
/// `w` must be null or a handle returned by this library.
#[no_mangle]
pub unsafe extern "C" fn pl_witness_free(w: *mut PlWitness) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Number of path-like trees of order `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pl_count_path_like(n: usize, out: *mut usize) -> PlStatus {
    guard(|| {
        *out_arg(out)? = enumerate_path_like_trees(n).len();
        Ok(())
    })
}
