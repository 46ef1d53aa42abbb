//! Generator formulas as printed, in LaTeX, and the SW(3/2,2) brackets.

pub const J_E1_MINUS_F12: &str = r#"J^{(e_{1})}-J^{(f_{12})}+:\Phi^{-1}J^{(h_1)}:-\tfrac{1}{2}:\Phi^{12}J^{(h_1)}:-\tfrac{1}{2}:\Phi^{12}J^{(h_2)}:\\
&-(\tfrac{1}{2}+k)\partial\Phi^{-1}-\tfrac{1}{2}k\partial\Phi^{12}."#;

pub const J_F2: &str = r#"J^{(f_2)}-\tfrac{1}{2}:\Phi^{12}J^{(e_1)}:+:\Phi^{-1}J^{(f_{12})}:+:J^{(h_2)}J^{(h_2)}:\\
&+\tfrac{1}{2}:\Phi^{-1}\Phi^{12}J^{(h_1)}:+\tfrac{1}{2}:\Phi^{-1}\Phi^{12}J^{(h_2)}:+\tfrac{1}{2}\left(1+4k\right)\partial J^{(h_2)}\\
&+\tfrac{1}{2}k:\Phi^{-1}\partial\Phi^{12}:,"#;

pub const J_F1122: &str = r#"J^{(f_{1122})}+\tfrac{1}{2}:J^{(f_{12})}\Phi^{12}:+(-2):J^{(h_1)}J^{(h_2)}:+(-1):J^{(h_1)}J^{(h_1)}:\\
&+(-1):J^{(h_2)}J^{(h_2)}:+(-\tfrac{1}{2}):\Phi^{-1}\Phi^{12}J^{(h_1)}:+(-\tfrac{1}{2}):\Phi^{-1}\Phi^{12}J^{(h_2)}:\\
&+(-k)\partial J^{(h_1)}+(-k)\partial J^{(h_2)}+\tfrac{1}{8}\left(-1-2k\right) :\partial\Phi^{-1}\Phi^{12}:\\
&-\tfrac{1}{8}\left(-1+2k\right):\Phi^{-1}\partial\Phi^{12}:+\tfrac{1}{16}\left(1+2k\right):\partial\Phi^{12}\Phi^{12}:."#;

pub const FULL_G: &str = r#"\tfrac{2}{\sqrt{\left(-1-2k\right)}}\left(J^{(e_{1})}-J^{(f_{12)}}+:\Phi^{-1}J^{(h_1)}:-\tfrac{1}{2}:\Phi^{12}J^{(h_1)}:\right.\\
&\left.-\tfrac{1}{2}:\Phi^{12}J^{(h_2)}:-(\tfrac{1}{2}+k)\partial\Phi^{-1}-\tfrac{1}{2}k\partial\Phi^{12}\right),"#;

pub const FULL_L: &str = r#"\left(-\tfrac{2}{1+2k}\right)\left(J^{(f_2)}+J^{(f_{1122})}-:J^{(h_1)}J^{(h_1)}:
-2:J^{(h_1)}J^{(h_2)}:\right.\\
& \left.+:\Phi^{-1}J^{(f_{12})}:+\left(\tfrac{1+2k}{8}\right):\Phi^{-1}\partial \Phi^{12}:+(-\frac{1}{2}):\Phi^{12}J^{(e_1)}:\right. \\
& \left.+(-\tfrac{1}{2}):\Phi^{12}J^{(f_{12})}:+\left(-\tfrac{1+2k}{8}\right):\partial \Phi^{-1}\Phi^{12}:+ \left(\tfrac{1+2k}{16}\right):\partial \Phi^{12}\Phi^{12}:\right.\\
&\left.+(-1)\partial J^{(h_1)}+\left(\tfrac{1+2k}{2}\right)\partial J^{(h_2)}\right),"#;

pub const FULL_W: &str = r#"\tfrac{2\sqrt{1-2k}\sqrt{5+8k}}{5+18k+16k^{2}}\left(
J^{(f_{2})}+\tfrac{(2+8 k)}{-1+2 k}J^{(f_{1122})}+\tfrac{(2+8 k)}{1-2 k}:J^{(h_{1})}J^{(h_{1})}:\right.\\
&\left.+\tfrac{(4+16 k)}{1-2 k}:J^{(h_{1})}J^{(h_{2})}:+\tfrac{(3+6 k)}{1-2 k}:J^{(h_{2})}J^{(h_{2})}:+:\Phi^{-1}J^{f_{12}}:\right.\\
&\left.+\tfrac{(3+6 k)}{2-4 k}:\Phi^{-1}\Phi^{12}J^{(h_{1})}:+\tfrac{(3+6 k)}{2-4 k}:\Phi^{-1}\Phi^{12}J^{(h_{2})}:\right.\\
&\left.+\tfrac{(-1-2 k)}{4}:\Phi^{-1}\partial\Phi^{12}:-\tfrac{1}{2}:\Phi^{12}J^{(e_{1})}:+\tfrac{(1+4 k)}{1-2 k}:\Phi^{12}J^{(f_{12})}:\right.\\
&\left.+\tfrac{\left(1+6 k+8 k^2\right)}{4-8 k}:\partial\Phi^{-1}\Phi^{12}:+\tfrac{\left(1+6 k+8 k^2\right)}{-8+16 k}:\partial\Phi^{12}\Phi^{12}:\right.\\
&\left.-\tfrac{2 k (1+4 k)}{-1+2 k}\partial J^{(h_{1})}+\tfrac{\left(1+6 k+8 k^2\right)}{2-4 k}\partial J^{(h_2)}\right),"#;

pub const FULL_U: &str = r#"\left(\tfrac{12 i \sqrt{1+3 k} }{\sqrt{1-2 k} \sqrt{5+8 k} \sqrt{1+5 k+6 k^2}}\right)\left(J^{(f_{122})}-:J^{(h_{1})}J^{(e_{1})}:-:J^{(h_{2})}J^{(e_{1})}:\right.\\
&\left.-:J^{(h_{2})}J^{(f_{12})}:+:\Phi^{-1}J^{(f_{1122})}:-:\Phi^{-1}J^{(h_{1})}J^{(h_{1})}:\right.\\
&\left.-:\Phi^{-1}J^{(h_{1})}J^{(h_{2})}:-\tfrac{1}{4}:\Phi^{-1}\Phi^{12}J^{(e_{1})}:-\tfrac{1}{2}:\Phi^{-1}\Phi^{12}J^{(f_{12})}:\right.\\
&\left.+\tfrac{(1+2 k)}{16}:\Phi^{-1}\partial\Phi^{12}\Phi^{12}:+\tfrac{(1-2 k)}{6}:\Phi^{-1}\partial J^{(h_{1})}:+\tfrac{1}{4}:\Phi^{12}J^{(f_{2})}:\right.\\
&\left.-\tfrac{1}{2}:\Phi^{12}J^{(h_{1})}J^{(h_{2})}:-\tfrac{1}{2} :\Phi^{12}J^{(h_{2})}J^{(h_{2})}:+\tfrac{(-1-4 k)}{12}:\Phi^{12}\partial J^{(h_{1})}:\right.\\
&\left.+\tfrac{(-1-4 k)}{12}:\Phi^{12}\partial J^{(h_{2})}:+\tfrac{(1+4 k)}{6}:\partial\Phi^{-1}J^{(h_{1})}:+\left(\tfrac{1}{2}+k\right):\partial\Phi^{-1}J^{(h_{2})}:\right.\\
&\left.+\tfrac{(1+2 k)}{8}:\partial\Phi^{-1}\Phi^{-1}\Phi^{12}:+\tfrac{(-1-4 k)}{12}:\partial\Phi^{12}J^{(h_{1})}:\right.\\
&\left.+\left(-\tfrac{1}{12}-\tfrac{5 k}{6}\right) :\partial\Phi^{12}J^{(h_{2})}:+\tfrac{(1-2 k)}{6}\partial J^{(e_{1})}:+\tfrac{(-1-4 k)}{6}\partial J^{(f_{12})}:\right.\\
&\left.+\tfrac{\left(1+6 k+8 k^2\right)}{24}\partial^{2}\Phi^{-1}-\tfrac{k (1+4 k)}{12}\partial^{2}\Phi^{12}\right)."#;

pub const FREE_G: &str = r#"\tfrac{2}{\sqrt{\left(-1-2k\right)}}\left(:\Phi^{-1}J^{(h_1)}:-\tfrac{1}{2}:\Phi^{12}J^{(h_1)}:-\tfrac{1}{2}:\Phi^{12}J^{(h_2)}:-(\tfrac{1}{2}+k)\partial\Phi^{-1}\right.\\
&\left.-\tfrac{1}{2}k\partial\Phi^{12}\right),"#;

pub const FREE_L: &str = r#"\left(-\tfrac{2}{1+2k}\right)\left(:J^{(h_1)}J^{(h_1)}:
-2:J^{(h_1)}J^{(h_2)}:+\left(\tfrac{1+2k}{8}\right):\Phi^{-1}\partial \Phi^{12}:\right. \\
& \left.+(-\frac{1}{2}):\Phi^{12}J^{(e_1)}:+\left(-\tfrac{1+2k}{8}\right):\partial \Phi^{-1}\Phi^{12}:+ \left(\tfrac{1+2k}{16}\right):\partial \Phi^{12}\Phi^{12}:\right.\\
&\left.+(-1)\partial J^{(h_1)}+\left(\tfrac{1+2k}{2}\right)\partial J^{(h_2)}\right),"#;

pub const FREE_W: &str = r#"\tfrac{2\sqrt{1-2k}\sqrt{5+8k}}{5+18k+16k^{2}}\left(
\tfrac{(2+8 k)}{1-2 k}:J^{(h_{1})}J^{(h_{1})}:+\tfrac{(4+16 k)}{1-2 k}:J^{(h_{1})}J^{(h_{2})}:\right.\\
&\left.+\tfrac{(3+6 k)}{1-2 k}:J^{(h_{2})}J^{(h_{2})}:+\tfrac{(3+6 k)}{2-4 k}:\Phi^{-1}\Phi^{12}J^{(h_{1})}:+\tfrac{(3+6 k)}{2-4 k}:\Phi^{-1}\Phi^{12}J^{(h_{2})}:\right.\\
&\left.+\tfrac{(-1-2 k)}{4}:\Phi^{-1}\partial\Phi^{12}:+\tfrac{\left(1+6 k+8 k^2\right)}{4-8 k}:\partial\Phi^{-1}\Phi^{12}:+\tfrac{\left(1+6 k+8 k^2\right)}{-8+16 k}:\partial\Phi^{12}\Phi^{12}:\right.\\
&\left.-\tfrac{2 k (1+4 k)}{-1+2 k}\partial J^{(h_{1})}+\tfrac{\left(1+6 k+8 k^2\right)}{2-4 k}\partial J^{(h_2)}\right),"#;

pub const FREE_U: &str = r#"\left(\tfrac{12 i \sqrt{1+3 k} }{\sqrt{1-2 k} \sqrt{5+8 k} \sqrt{1+5 k+6 k^2}}\right)\left(-:\Phi^{-1}J^{(h_{1})}J^{(h_{1})}:-:\Phi^{-1}J^{(h_{1})}J^{(h_{2})}:\right.\\
&\left.+\tfrac{(1+2 k)}{16}:\Phi^{-1}\partial\Phi^{12}\Phi^{12}:+\tfrac{(1-2 k)}{6}:\Phi^{-1}\partial J^{(h_{1})}:-\tfrac{1}{2}:\Phi^{12}J^{(h_{1})}J^{(h_{2})}:\right.\\
&\left.-\tfrac{1}{2} :\Phi^{12}J^{(h_{2})}J^{(h_{2})}:+\tfrac{(-1-4 k)}{12}:\Phi^{12}\partial J^{(h_{1})}:+\tfrac{(-1-4 k)}{12}:\Phi^{12}\partial J^{(h_{2})}:\right.\\
&\left.+\tfrac{(1+4 k)}{6}:\partial\Phi^{-1}J^{(h_{1})}:+\left(\tfrac{1}{2}+k\right):\partial\Phi^{-1}J^{(h_{2})}:+\tfrac{(1+2 k)}{8}:\partial\Phi^{-1}\Phi^{-1}\Phi^{12}:\right.\\
&\left.+\tfrac{(-1-4 k)}{12}:\partial\Phi^{12}J^{(h_{1})}:+\left(-\tfrac{1}{12}-\tfrac{5 k}{6}\right) :\partial\Phi^{12}J^{(h_{2})}:+\tfrac{\left(1+6 k+8 k^2\right)}{24}\partial^{2}\Phi^{-1}\right.\\
&\left.-\tfrac{k (1+4 k)}{12}\partial^{2}\Phi^{12}\right)."#;

pub const A: &str = r#"\frac{2}{\sqrt{\left(-1-2k\right)}}"#;

pub const A1: &str = r#"\tfrac{2\sqrt{1-2k}\sqrt{5+8k}}{5+18k+16k^{2}}"#;

pub const A2: &str = r#"\left(\tfrac{2+8k}{2k-1}\right)\tfrac{2\sqrt{1-2k}\sqrt{5+8k}}{5+18k+16k^{2}}"#;

/// Literal substitutions applied before parsing: `(formula, printed, read as)`.
pub const FIXES: &[(&str, &str, &str)] = &[
    ("full L", r"(-1)\partial J^{(h_1)}", r"(-k)\partial J^{(h_1)}"),
    ("full W", r"J^{f_{12}}", r"J^{(f_{12})}"),
    ("full U", r"\partial J^{(e_{1})}:", r"\partial J^{(e_{1})}"),
    ("full U", r"\partial J^{(f_{12})}:", r"\partial J^{(f_{12})}"),
];

/// Apply the fixes for `name` and drop trailing punctuation.
pub fn prepare(name: &str, text: &str) -> String {
    let mut t = text.to_string();
    for (n, from, to) in FIXES {
        if *n == name {
            t = t.replace(from, to);
        }
    }
    t.trim_end().trim_end_matches([',', '.']).to_string()
}

/// Rewrite the operator form `(\partial+n\lambda)X` as `\partial X + n\lambda X`.
pub fn expand_operator_form(text: &str) -> String {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(rest) = compact.strip_prefix(r"(\partial+") {
        if let Some((coeff, field)) = rest.split_once(r"\lambda)") {
            return format!(r"\partial {field} + {coeff}\lambda {field}");
        }
    }
    text.to_string()
}

/// `(identity, left, right, right-hand side)`, in the symbols G, L, W, U.
pub const TARGETS: &[(&str, &str, &str, &str)] = &[
    ("[L_λ L]", "L", "L", r"\partial L + 2\lambda L + \tfrac{c}{12}\lambda^{3}"),
    ("[L_λ G]", "L", "G", r"\partial G + \tfrac{3}{2}\lambda G"),
    ("[G_λ G]", "G", "G", r"2L + \tfrac{c}{3}\lambda^{2}"),
    ("[G_λ W]", "G", "W", r"U"),
    ("[G_λ U]", "G", "U", r"(\partial+4\lambda)W"),
    (
        "[W_λ W]",
        "W",
        "W",
        r"\tfrac{c}{12}\lambda^{3}
+ \left(
  2L +{\tfrac{2(6 + 5c)}
   {{\sqrt{15 - c}}{\sqrt{21 + 4c}}}} W \right)\lambda + \nonumber\\
& +\partial L +{\tfrac{6 + 5c}
   {{\sqrt{15 - c}}\,{\sqrt{21 + 4c}}}} \partial W",
    ),
    (
        "[W_λ U]",
        "W",
        "U",
        r"(-\tfrac{3}{2})G\lambda^{2}+\left(\tfrac{6+ 5c}{\sqrt{15-c}\sqrt{21+4c}}U-\partial G\right)\lambda \nonumber \\
&+\tfrac{(15-c)}{(21+4c)}\partial^2 G +\tfrac{(-2)\sqrt{15-c}}{\sqrt{21+4c}}\partial U +\tfrac{(-54)}{(21+4c)}:LG:\nonumber\\
&+\tfrac{(-54)}{\sqrt{15-c}\sqrt{21+4c}}:WG:",
    ),
    (
        "[U_λ U]",
        "U",
        "U",
        r"-\tfrac{c}{12}\lambda^{4}+\left(-5L-\tfrac{2(6+5c)}{\sqrt{15-c}\sqrt{21+4c}} W\right)\lambda^{2}\nonumber \\
&+\left(-5\partial L-\tfrac{2(6+5c)}{\sqrt{15-c}\sqrt{21+4c}}\partial W\right)\lambda \nonumber \\
&-\tfrac{6(c+3)}{(21+4c)}\partial^{2}L+\tfrac{3(6-c)}{\sqrt{15-c}\sqrt{21+4c}}\partial^{2}W\nonumber\\
&-\tfrac{108}{(21+4c)}:LL:-\tfrac{108}{\sqrt{15-c}\sqrt{21+4c}}:LW:\nonumber\\
&+\tfrac{27}{(21+4c)}:G\partial G: + \tfrac{54}{\sqrt{15-c}\sqrt{21+4c}}:GU:",
    ),
];

/// Primary fields and their conformal weights.
pub const PRIMARIES: &[(&str, &str)] = &[("G", "3/2"), ("W", "2"), ("U", "5/2")];
