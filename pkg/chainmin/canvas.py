from chainmin.misc import *
from chainmin.calc.centred import MkTable
from chainmin.calc.compression import Trajectory

import matplotlib.pyplot as plt


THEMES = {
    'light': {
        'facecolor':'#F9F9F9',
        'tickcolor':'#000000',
        'dotcolor':'#26272D',
        'edgecolor':'#5794DE',
        'figcolor':[
            '#D52753', '#23974A', '#DF631C', '#275FE4', '#823FF1',
            '#27618D', '#FF6480', '#3CBC66', '#C5A332', '#0099E1'
        ],
        'textcolor':'#26272D'
    },
    'solarized': {
        'facecolor':'#FDF6E3',
        'tickcolor':'#002B36',
        'dotcolor':'#002B36',
        'edgecolor':'#586E75',
        'figcolor':[
            '#DC322F', '#859900', '#B58900', '#268BD2', '#D33682',
            '#2AA198', '#CB4B16', '#6C71C4'
        ],
        'textcolor':'#002B36'
    },
    'gruvbox': {
        'facecolor':'#FBF1C7',
        'tickcolor':'#7C6F64',
        'dotcolor':'#3C3836',
        'edgecolor':'#7C6F64',
        'figcolor':[
            '#CC241D', '#98971A', '#D79921', '#458588', '#B16286',
            '#689D6A'
        ],
        'textcolor':'#3C3836'
    }
}


class Canvas:
    def __init__(
        self,
        theme:str = 'light',
        window_size:Tuple[float, float] = (6, 4),
        fontsize:int = 10,
        draw_grid:bool = True,
        **kwargs
    ) -> None:
        """
        Class for rendering m_k tables and compression trajectories with matplotlib.

        Args:
            theme (str): name of a color theme to be applied on the canvas.
            window_size (float, float): canvas dimension (width, height) in inches.
            fontsize (int): tick label font size in points.
            draw_grid (bool): if `False`, the canvas shows no grid.
        """
        self.theme = THEMES.get(theme)

        if self.theme is None:
            raise ValueError(" \
                [ERROR] Canvas: Can't find a canvas theme named `%s`. \
                "%(theme)
            )

        self.window_size = window_size
        self.fontsize = fontsize
        self.draw_grid = draw_grid
        self.items = list()

    def add(
        self,
        item:Union[MkTable, Trajectory],
        color:Optional[str] = None,
        style:str = '-',
        show_breakpoints:bool = True,
        label:Optional[str] = None
    ) -> None:
        """
        Reserve a table or trajectory for drawing.

        Args:
            item (MkTable | Trajectory): what to draw; a table as m_k(a) over a,
                a trajectory as w_k per step.
            color (str): line color; the theme's next figure color by default.
            style (str): matplotlib line style.
            show_breakpoints (bool): mark the a_l of a table.
            label (str): legend entry.
        """
        if not isinstance(item, (MkTable, Trajectory)):
            raise ValueError(" \
                [ERROR] Canvas: can only draw MkTable or Trajectory, got %s. \
                "%(type(item).__name__)
            )

        palette = self.theme['figcolor']
        c = color if color != None else palette[len(self.items) % len(palette)]

        self.items.append({
            'fig': item, 'color': c, 'style': style,
            'breakpoints': show_breakpoints, 'label': label
        })

    def remove(self, item:Union[MkTable, Trajectory]) -> None:
        for i in range(len(self.items)):
            if self.items[i]['fig'] is item:
                del self.items[i]
                return

        warnings.warn(" \
            [WARN] Canvas: No such item exists on the figure list. \
        ")

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, item:int) -> Union[MkTable, Trajectory]:
        if item >= len(self.items):
            raise IndexError(" \
                [ERROR] Canvas: Index out of bound. \
            ")

        return self.items[item]['fig']

    def plot(self) -> None:
        """
        Plot everything the canvas holds.
        """
        self._draw_figs()
        plt.show()

    def save(self, path:str) -> None:
        """
        Save the current figure.
        """
        fig = self._draw_figs()
        fig.savefig(path, facecolor=self.theme['facecolor'])
        plt.close(fig)

    def _draw_figs(self) -> object:
        plt.rc('font', family='DejaVu Sans', size=self.fontsize)
        fig = plt.figure(figsize=self.window_size, facecolor=self.theme['facecolor'])
        ax = fig.add_subplot(1, 1, 1)
        ax.set_facecolor(self.theme['facecolor'])
        ax.tick_params(colors=self.theme['tickcolor'])

        for cfg in self.items:
            if isinstance(cfg['fig'], MkTable):
                self._plot_table(ax, cfg)
            else:
                self._plot_trajectory(ax, cfg)

        if self.draw_grid:
            ax.grid(True, color=self.theme['edgecolor'], alpha=0.3)

        if any(cfg['label'] for cfg in self.items):
            ax.legend()

        return fig

    def _plot_table(self, ax:object, cfg:dict) -> None:
        table = cfg['fig']
        a = np.arange(len(table))
        m = np.asarray(table.values, dtype=float)

        ax.plot(a, m, linestyle=cfg['style'], color=cfg['color'], label=cfg['label'] or 'm_%d'%(table.k))

        if cfg['breakpoints']:
            bps = np.asarray(table.breakpoints)
            ax.scatter(bps, m[bps], c=self.theme['dotcolor'], s=12, zorder=3)

        ax.set_xlabel('a', color=self.theme['textcolor'])
        ax.set_ylabel('chains', color=self.theme['textcolor'])

    def _plot_trajectory(self, ax:object, cfg:dict) -> None:
        traj = cfg['fig']
        w = np.asarray([float(v) for v in traj.w])

        ax.step(np.arange(len(w)), w, where='post', linestyle=cfg['style'], color=cfg['color'],
                label=cfg['label'] or 'w_%d'%(traj.k))
        ax.axhline(traj.m_k, color=self.theme['edgecolor'], linestyle='--')
        ax.set_xlabel('step', color=self.theme['textcolor'])
        ax.set_ylabel('expected chains', color=self.theme['textcolor'])


def plot(item:Union[MkTable, Trajectory], path:Optional[str] = None, **kwargs) -> None:
    """
    Draw a table or trajectory on a fresh canvas, saving it to `path` if given.
    """
    canva = Canvas(**kwargs)
    canva.add(item)

    if path is None:
        canva.plot()
    else:
        canva.save(path)

    del canva
