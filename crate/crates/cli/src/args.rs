use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "elladic", version, about = "Finite-precision l-adic regulator and volume toolkit")]
pub struct Cli {
    /// Work modulo 𝔩^P.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Regulator truncation order.
    #[arg(long, global = true)]
    pub cutoff: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the result and its manifest here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Record wall time in the manifest (outputs are then no longer byte-stable).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    #[command(subcommand)]
    Padic(PadicCmd),
    #[command(subcommand)]
    Series(SeriesCmd),
    #[command(subcommand)]
    Flow(FlowCmd),
    #[command(subcommand)]
    Chains(ChainsCmd),
    #[command(subcommand)]
    Reg(RegCmd),
    #[command(subcommand)]
    Symp(SympCmd),
    #[command(subcommand)]
    Vol(VolCmd),
    Verify(VerifyArgs),
    /// Re-run the command recorded in an output file and compare bytes.
    Replay { file: String },
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    #[arg(long)]
    pub ell: u64,
    /// Lower coefficients of the Eisenstein polynomial, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eisenstein: Vec<i64>,
}

#[derive(Subcommand, Debug)]
pub enum PadicCmd {
    /// v_l(a!).
    Factval {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        a: u64,
    },
    /// Base-l digit sum and digit count.
    Digits {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        a: u64,
    },
    /// v_l(a_0!…a_n!/(|a|+n)!).
    Multinomial {
        #[arg(long)]
        ell: u64,
        #[arg(long, value_delimiter = ',')]
        parts: Vec<u64>,
    },
    /// Normalize a rational or ring element.
    Scalar {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    Log {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    Teichmuller {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        u: u64,
    },
    /// The d-th root of u congruent to `residue`.
    Hensel {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        d: u64,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long)]
        residue: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SeriesCmd {
    Mul {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Inv {
        #[arg(long)]
        f: String,
    },
    /// Exterior derivative of a form.
    D {
        #[arg(long)]
        form: String,
    },
    /// Primitive of a closed 1-form vanishing at 0.
    Antiderivative {
        #[arg(long)]
        form: String,
    },
    Dlog {
        #[arg(long)]
        f: String,
    },
    GaussNorm {
        #[arg(long)]
        f: String,
        /// Radius exponent: r = l^(-a).
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FlowCmd {
    Interpolate {
        #[arg(long)]
        psi: String,
        /// A rational, or "w:… u:… mod l^…".
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value = "1")]
        a: String,
    },
    /// The logarithmic vector field X_ψ.
    Field {
        #[arg(long)]
        psi: String,
    },
    Potential {
        #[arg(long)]
        field: String,
        #[arg(long)]
        omega: String,
    },
    /// Evaluate the flow of a field at time t.
    Flow {
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value = "1")]
        a: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ChainsCmd {
    Boundary {
        #[arg(long)]
        group: String,
        #[arg(long)]
        chain: String,
    },
    Homotopy {
        #[arg(long)]
        group: String,
        #[arg(long)]
        chain: String,
        /// Element index or label.
        #[arg(long)]
        h: String,
    },
    Solve {
        #[arg(long)]
        group: String,
        #[arg(long)]
        chain: String,
    },
    Homology {
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: usize,
        /// Coefficients Z/l^k, written "l^k".
        #[arg(long = "mod")]
        modulus: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum RegCmd {
    /// Φ̃_3 on a 4-tuple.
    Phi3 {
        #[arg(long)]
        tuple: String,
    },
    /// Ψ_3 on a 4-tuple.
    Psi3 {
        #[arg(long)]
        tuple: String,
    },
    EvalChain {
        #[arg(long)]
        chain: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum SympCmd {
    Tralt {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    Omega {
        #[arg(long)]
        rep: String,
        #[arg(long)]
        cocycle: String,
        #[arg(long)]
        cycle: String,
    },
    Bracket {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        omega: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum VolCmd {
    Compute {
        #[arg(long)]
        setup: String,
        /// Index of the conjugation datum.
        #[arg(long, default_value_t = 0)]
        datum: usize,
        #[arg(long)]
        ambiguity: bool,
    },
    AuditCocycle {
        #[arg(long)]
        setup: String,
        /// Pairs "i,j" separated by ';'; all pairs when absent.
        #[arg(long)]
        pairs: Option<String>,
    },
    AuditRestriction {
        #[arg(long)]
        setup: String,
        /// Subgroup elements, comma separated.
        #[arg(long, value_delimiter = ',')]
        sub: Vec<u32>,
        /// 2-cycle of the subgroup, in subgroup indices.
        #[arg(long)]
        cycle: String,
        #[arg(long)]
        index: u64,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Seconds; the remaining criteria are reported incomplete once exceeded.
    #[arg(long)]
    pub budget: Option<f64>,
}
