//! Named sweeps reproducing the figures of the no-fading and fading
//! numerical studies.
//!
//! Names follow the figure labels: `fig1`, `fig2`, `fig3` and `fig5` are the
//! four no-fading figures, the `fading_fig*` names the three fading ones.
//! `fig6` to `fig11` are aliases numbering all seven in order of appearance
//! (`fig6` to `fig8` for the last three no-fading figures, `fig9` onwards for
//! fading).

use std::fmt;
use std::str::FromStr;

use super::{parse_config, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigurePreset {
    Fig1,
    Fig2,
    Fig3,
    Fig5,
    FadingFig1,
    FadingFig2,
    FadingFig3,
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 7] = [
        FigurePreset::Fig1,
        FigurePreset::Fig2,
        FigurePreset::Fig3,
        FigurePreset::Fig5,
        FigurePreset::FadingFig1,
        FigurePreset::FadingFig2,
        FigurePreset::FadingFig3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigurePreset::Fig1 => "fig1",
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3 => "fig3",
            FigurePreset::Fig5 => "fig5",
            FigurePreset::FadingFig1 => "fading_fig1",
            FigurePreset::FadingFig2 => "fading_fig2",
            FigurePreset::FadingFig3 => "fading_fig3",
        }
    }

    fn alias(self) -> &'static str {
        match self {
            FigurePreset::Fig1 => "fig5",
            FigurePreset::Fig2 => "fig6",
            FigurePreset::Fig3 => "fig7",
            FigurePreset::Fig5 => "fig8",
            FigurePreset::FadingFig2 => "fig9",
            FigurePreset::FadingFig1 => "fig10",
            FigurePreset::FadingFig3 => "fig11",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            FigurePreset::Fig1 => "rate vs P_I, P_S=P_R=10 dB, unit gains, R_I=1",
            FigurePreset::Fig2 => "rate vs P_I, P_S=P_R=10 dB, |h_SR|=2, R_I=1",
            FigurePreset::Fig3 => "rate vs P_I, P_S=P_R=10 dB, |h_SR|=2, R_I=3",
            FigurePreset::Fig5 => "rate vs R_I, multihop, P_S=P_R=P_I=10 dB",
            FigurePreset::FadingFig1 => "point-to-point fading, rate vs K, P_S=P_I=5 dB",
            FigurePreset::FadingFig2 => "point-to-point fading, rate vs P_I, P_S=5 dB, K=1",
            FigurePreset::FadingFig3 => "multihop fading, rate vs P_I, P_S=10 dB, P_R=7 dB, R_I=0.4, K=1",
        }
    }

    /// The preset as config lines; [`FigurePreset::spec`] parses exactly this.
    pub fn config_text(self) -> &'static str {
        match self {
            FigurePreset::Fig1 => {
                "schemes=ni,du,cu,cs1,cs2,aid,nr\nsweep=p_i_db\nfrom=-10\nto=30\nstep=1\n\
                 p_s_db=10\np_r_db=10\nr_i=1\nh_sr=1\nh_sd=1\nh_rd=1\nh_i=1"
            }
            FigurePreset::Fig2 => {
                "schemes=ni,du,cu,cs1,cs2,aid,nr\nsweep=p_i_db\nfrom=-10\nto=30\nstep=1\n\
                 p_s_db=10\np_r_db=10\nr_i=1\nh_sr=2\nh_sd=1\nh_rd=1\nh_i=1"
            }
            FigurePreset::Fig3 => {
                "schemes=ni,du,cu,cs1,cs2,aid,nr\nsweep=p_i_db\nfrom=-10\nto=30\nstep=1\n\
                 p_s_db=10\np_r_db=10\nr_i=3\nh_sr=2\nh_sd=1\nh_rd=1\nh_i=1"
            }
            FigurePreset::Fig5 => {
                "schemes=ni,du,cu,cs1,cs2,aid,nldf\nsweep=r_i\nfrom=0\nto=6\nstep=0.25\n\
                 p_s_db=10\np_r_db=10\np_i_db=10\nh_sr=1\nh_sd=0\nh_rd=1\nh_i=1"
            }
            FigurePreset::FadingFig1 => {
                "schemes=f_p2p_u,f_p2p_s,f_ni\nsweep=k_factor\nfrom=0\nto=20\nstep=1\n\
                 p_s_db=5\np_i_db=5\nr_i=0.5\nh_sr=0\nh_sd=1\nh_rd=0\nh_i=1"
            }
            FigurePreset::FadingFig2 => {
                "schemes=f_p2p_u,f_p2p_s,f_ni\nsweep=p_i_db\nfrom=-10\nto=30\nstep=1\n\
                 p_s_db=5\nr_i=1\nh_sr=0\nh_sd=1\nh_rd=0\nh_i=1\nk_sr=1\nk_sd=1\nk_rd=1\nk_i=1"
            }
            FigurePreset::FadingFig3 => {
                "schemes=f_du,f_ds,f_cu,f_cs2,f_aid,f_ni\nsweep=p_i_db\nfrom=-10\nto=30\nstep=1\n\
                 p_s_db=10\np_r_db=7\nr_i=0.4\nh_sr=1\nh_sd=0\nh_rd=1\nh_i=1\nk_sr=1\nk_sd=1\nk_rd=1\nk_i=1"
            }
        }
    }

    pub fn spec(self) -> SweepSpec {
        parse_config(self.config_text()).expect("preset configs are valid")
    }
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigurePreset {
    type Err = String;

    /// Label names take precedence over the numbered aliases, so `fig5` is
    /// the multihop sweep.
    fn from_str(s: &str) -> Result<Self, String> {
        FigurePreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .or_else(|| FigurePreset::ALL.into_iter().find(|p| p.alias() == s && s != "fig5"))
            .ok_or_else(|| format!("unknown preset or malformed line `{s}`"))
    }
}
