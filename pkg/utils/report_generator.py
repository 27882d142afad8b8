"""
Report Generator Module
Writes analyze reports in Markdown format
"""

import os
import re
from datetime import datetime
from typing import Dict, Any, List

from version import __version__


class ReportGenerator:
    """Generate Markdown reports from the analyze JSON"""

    STATUS_MARKS = {
        'success': '✓',
        'partial': '~',
        'not_applicable': '–',
        'disabled': '–',
        'budget_exceeded': '✗',
        'error': '✗',
    }

    def __init__(self, output_dir: str = 'reports'):
        """
        Initialize report generator

        Args:
            output_dir: Directory to save reports
        """
        self.output_dir = output_dir
        self._ensure_output_dir()

    def _ensure_output_dir(self):
        if not os.path.exists(self.output_dir):
            os.makedirs(self.output_dir)

    def generate_report(self, analysis: Dict[str, Any]) -> str:
        """
        Write the report of one analyze run

        Args:
            analysis: JSON produced by toric.report.report

        Returns:
            Path to generated report file
        """
        timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
        slug = re.sub(r'[^A-Za-z0-9]+', '_', analysis['pair']['name']).strip('_')
        filepath = os.path.join(self.output_dir, f"analysis_{slug}_p{analysis['pair']['p']}_{timestamp}.md")

        sections = analysis.get('sections', {})
        with open(filepath, 'w', encoding='utf-8') as f:
            f.write(self._generate_header(analysis, timestamp))
            f.write(self._generate_status_table(sections))
            writers = {
                'cone': self._generate_cone_section,
                'hilbert': self._generate_hilbert_section,
                'ideal': self._generate_ideal_section,
                'lang': self._generate_lang_section,
                'classify': self._generate_flags_section,
                'r1': self._generate_r1_section,
                'divisor': self._generate_divisor_section,
                'adm': self._generate_adm_section,
                'facemap': self._generate_facemap_section,
                'chart': self._generate_chart_section,
            }
            for name, result in sections.items():
                if result['status'] != 'success':
                    f.write(self._generate_failed_section(name, result))
                elif name in writers:
                    f.write(writers[name](result['data']))
            f.write(self._generate_footer())

        return filepath

    def _generate_header(self, analysis: Dict[str, Any], timestamp: str) -> str:
        date_formatted = datetime.strptime(timestamp, '%Y%m%d_%H%M%S').strftime('%Y-%m-%d %H:%M:%S')
        pair = analysis['pair']
        semigroup = analysis.get('semigroup', {})
        return f"""# Local Model Pair Analysis

## Pair

- **Pair:** `{pair['name']}` ({pair.get('family', 'custom')})
- **Prime:** p = {pair['p']}
- **Ramification index:** e = {pair['e']}
- **Orbit size:** {len(pair['orbit'])}
- **Semigroup:** {semigroup.get('kind', semigroup.get('selector', 'max'))}
- **Budget:** {analysis.get('budget', {}).get('name', 'fast')}
- **Date:** {date_formatted}

---

"""

    def _generate_status_table(self, sections: Dict[str, Any]) -> str:
        out = "## Sections\n\n| Section | Status | Notes |\n|---|---|---|\n"
        for name, result in sections.items():
            mark = self.STATUS_MARKS.get(result['status'], '?')
            notes = '; '.join(result.get('errors', []) + result.get('warnings', []))
            out += f"| {name} | {mark} {result['status']} | {notes} |\n"
        return out + "\n---\n\n"

    def _generate_failed_section(self, name: str, result: Dict[str, Any]) -> str:
        out = f"## {name}\n\n**Status:** {result['status']}\n\n"
        for message in result.get('errors', []) + result.get('warnings', []):
            out += f"- {message}\n"
        return out + "\n"

    def _generate_cone_section(self, data: Dict[str, Any]) -> str:
        pred = data['predicates']
        out = "## Cone\n\n"
        out += f"- **Rays:** {len(data['rays'])}\n"
        out += f"- **f-vector:** {tuple(data['f_vector'])}\n"
        out += f"- **Strictly convex:** {self._yes(pred['strictly_convex'])}\n"
        out += f"- **Simplicial:** {self._yes(pred['simplicial'])}\n"
        out += f"- **Lineality rank:** {pred['lineality_rank']}\n"
        out += f"- **dim T_(G,mu):** {data['dimension_T_mu']['dimension']}\n"
        if 'free_action' in data:
            out += f"- **Free action values:** {data['free_action']['values']}\n"
        out += "\n**Rays of sigma:**\n\n"
        out += self._vector_list(data['rays'])
        return out + "\n"

    def _generate_hilbert_section(self, data: Dict[str, Any]) -> str:
        out = f"## Hilbert Basis\n\n{data['size']} elements, free: {self._yes(data['free'])}\n\n"
        out += "| Variable | Vector |\n|---|---|\n"
        for el in data['elements']:
            out += f"| `{el['name']}` | {tuple(el['vector'])} |\n"
        return out + "\n"

    def _generate_ideal_section(self, data: Dict[str, Any]) -> str:
        out = f"## Toric Ideal\n\n- **Minimal generators:** {data['minimal_generator_count']}\n\n"
        shown = data['polynomials'][:50]
        if shown:
            out += "```\n" + "\n".join(shown) + "\n```\n"
        if len(data['polynomials']) > len(shown):
            out += f"\n({len(data['polynomials']) - len(shown)} more in the JSON output)\n"
        return out + "\n"

    def _generate_lang_section(self, data: Dict[str, Any]) -> str:
        out = "## Lang Cover\n\n"
        out += f"- **|T(F_p)|:** {data['group_order']}\n"
        out += f"- **Fiber length over the closed orbit:** {data['fiber_length']}\n"
        out += f"- **Flat:** {self._yes(data['flat'])}\n"
        out += f"- **Smooth:** {self._yes(data['smooth'])}\n"
        if 'expected' in data:
            out += f"- **Expected:** {data['expected']['verdict']} ({data['expected']['reason']})\n"
        if data['rays']:
            out += "\n| Ray | Ramification |\n|---|---|\n"
            for ray in data['rays']:
                out += f"| {tuple(ray['lambda'])} | {ray['e']} |\n"
        return out + "\n"

    def _generate_flags_section(self, data: Dict[str, Any]) -> str:
        out = "## Classification\n\n"
        for key, value in data.items():
            out += f"- **{key}:** {self._yes(value)}\n"
        return out + "\n"

    def _generate_r1_section(self, data: Dict[str, Any]) -> str:
        out = f"## R1\n\n**Verdict:** {data['verdict']}\n\n| mu' | divisibility | ramification | verdict |\n|---|---|---|---|\n"
        for el in data['elements']:
            out += f"| ({', '.join(el['element'])}) | {el['divisibility']} | {el['ramification']} | {el['verdict']} |\n"
        return out + "\n"

    def _generate_divisor_section(self, data: Dict[str, Any]) -> str:
        out = f"## Divisor Multiplicities\n\ne = {data['e']}\n\n"
        for row in data['divisors']:
            values = ', '.join(f"{m['mu']}: {m['m']}" for m in row['multiplicities'])
            out += f"- chi = {tuple(row['chi'])}: {values}\n"
        return out + "\n"

    def _generate_adm_section(self, data: Dict[str, Any]) -> str:
        out = f"## Admissible Set\n\n- **|Adm(mu)|:** {data['size']}\n"
        out += f"- **Covers:** {len(data['covers'])}\n"
        lengths: Dict[int, int] = {}
        for el in data['elements']:
            lengths[el['length']] = lengths.get(el['length'], 0) + 1
        out += f"- **Elements by length:** {dict(sorted(lengths.items()))}\n"
        return out + "\n"

    def _generate_facemap_section(self, data: Dict[str, Any]) -> str:
        out = "## Face Map\n\n"
        out += f"- **Surjective onto nonzero faces:** {self._yes(data['surjective'])}\n"
        out += f"- **Injective:** {self._yes(data['injective'])}\n"
        out += f"- **Order reversing:** {self._yes(data['order_reversing'])}\n"
        return out + "\n"

    def _generate_chart_section(self, data: Dict[str, Any]) -> str:
        out = "## Charts\n\n"
        for kind, chart in data.items():
            out += f"### {kind}\n\n```\n{chart['ring']}\n```\n\n"
            out += f"Equivariant: {self._yes(chart.get('equivariant', True))}\n\n"
        return out

    def _generate_footer(self) -> str:
        return f"""---

*Generated by weyl-toric {__version__}*
"""

    @staticmethod
    def _yes(value: Any) -> str:
        if isinstance(value, bool):
            return '✓' if value else '✗'
        return str(value)

    @staticmethod
    def _vector_list(vectors: List[List[int]]) -> str:
        return "".join(f"- {tuple(v)}\n" for v in vectors)
