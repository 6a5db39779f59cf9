#!/usr/bin/env python3
"""Regenerate the bundled word-frequency profiles under src/phrasemap/data/.

The shipped profiles are compact stand-ins for a real reference corpus:
a curated vocabulary ordered roughly by everyday usage, with Zipf-shaped
counts. Real deployments should substitute a full frequency table (same
TSV format) via the corpus_path config field.
"""
from __future__ import annotations

import random
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent.parent / "src" / "phrasemap" / "data"

# Tier 1: function words, highest counts first.
FUNCTION_WORDS = """
the of and a to in is was he for it with as his on be at by i this had
not are but from or have an they which one you were her all she there
would their we him been has when who will more no if out so said what
up its about into than them can only other new some could time these
two may then do first any my now such like our over man me even most
made after also did many before must through back years where much your
way well down should because each just those people how too little good
very make world still own see men work long get here between both life
being under never day same another know while last might us great old
year off come since against go came right used take three himself few
house use during without again place around however home small found
thought went say part once general high upon school every does got left
number course until always away something fact though water less public
put thing almost hand enough far took head yet government system better
set told nothing night end why called eyes find going look asked later
knew point next city business give group toward young let room within
done along among things word cannot don't didn't it's that's i'm can't
won't isn't wasn't doesn't you're they're we're there's he's she's i've
we've they've i'll you'll let's
""".split()

# Tier 2: common content words.
COMMON_WORDS = """
information large shown early often felt important case become best
ever need side social president given order national possible rather
second face per necessary form seemed big looked mind others area kind
began door east power money change interest want real open study across
book question human thus close although white turned body week car
least moment days whole paper special ground front help already several
held west south north itself members history result today country
problem service line air name woman certain themselves making example
hands development action nature century different either church period
evidence effect student level stood total quite field reason free
matter value available economic areas community control person family
students common force test feel light future report music particular
road minutes cost simply morning short society able behind basic
process play million provide class keep major local summer issue
political full party alone anything run program present plan deal girl
position section view america due past market various table hard cut
usually hours red move increase required town outside idea modern age
policy board trade support wife federal research basis numbers member
health education foreign girls training private record office taken
cold needed developed university whether food space strong sound
organization medical park art earlier act data situation problems
someone systems son brought lines surface county costs officer king
miss type material department working wrote hope longer nation personal
answer addition industry low points miles single schools countries
article science return military black hair central site clear recent
gone written understand provided account international wall analysis
half sense heard instead average floor design peace property europe
court natural method difficult union defense range picture committee
computer spring stage series income population conditions horse justice
administration taking rate current growth press month terms changes
approach effort river bill hot standard square reading lost throughout
concerned annual election england knowledge stock image rates direction
indeed normal oil director physical influence january trial opportunity
remember nations rise william size statement inside tax chance hall
device objective pattern deep plane complete radio audience determined
literature merely apparently saturday attack respect players games
reached trouble pressure distance meet staff station beautiful nuclear
attempt explained style blood shot performance ten volume remained
operation plant described store piece shall wait buy mouth ready
concern wide master corner neither earth season blue prepared follow
museum event race congress wind thinking truth fall character fine
activity conference application poor speak catch village port
neighborhood slowly teacher machine function heavy league fear
additional studies hour produce claim firm tall treatment camp sort
iron secret batch sight fiscal fish forest frequently mission writing
quality leader capital fresh fight appear separate published scene
spent sun leaving equal amount key drive fire principle demand articles
moreover marriage window teeth regular flow map phrase text cloud tag
weight document sentence search server query engine mining filter index
layout marker zoom label trend topic source target model noise signal
sample output input review award grant funding institute college
laboratory faculty professor undergraduate graduate project proposal
abstract workshop curriculum partnership outreach stem engineering
physics chemistry biology mathematics statistics geology ocean climate
energy materials sensors robotics genomics ecology species cells brain
neural imaging quantum optics laser polymer catalyst membrane protein
molecular algorithms software network wireless database visualization
simulation modeling dynamics turbulence seismic arctic polar vessel
ship expedition observatory telescope particle detector accelerator
mentoring dissertation fellowship postdoctoral collaboration
interdisciplinary innovation entrepreneurship commercialization
assessment evaluation learning teaching classroom pedagogy literacy
equity diversity inclusion broadening participation underrepresented
minority rural urban tribal veterans k-12
""".split()

# Tail: uncommon words, near-singleton counts like a real corpus tail.
RARE_WORDS = """
magnetosphere ionosphere heliosphere magnetotail auroral geomagnetic
plasmas magnetometer thermosphere mesosphere exosphere radiometer
spectrometer interferometer bolometer cryostat cryogenics supernova
quasar pulsar magnetar exoplanet asteroseismology helioseismology
nanoparticle nanotube nanowire nanostructure nanofabrication
metamaterial plasmonics spintronics photonics optoelectronics
biomineralization phytoplankton zooplankton biogeochemistry
paleoclimate paleontology stratigraphy sedimentology geochronology
petrology volcanology seismology tectonics lithosphere asthenosphere
permafrost cryosphere glaciology limnology estuarine benthic pelagic
microbiome metagenomics proteomics transcriptomics epigenetics
phylogenetics morphogenesis organogenesis neurogenesis synaptic
dendritic axonal cortical hippocampal cerebellar electrophysiology
optogenetics connectome chemotaxis quorum biofilm extremophile
archaea cyanobacteria mycorrhizal rhizosphere pollinator herbivory
mutualism speciation phenotypic genotypic epistasis heritability
wavelet eigenvalue eigenvector tensor manifold topology homology
cohomology fractal stochastic ergodic martingale bayesian markov
heuristic combinatorial polynomial asymptotic cryptography
cryptographic blockchain photovoltaic thermoelectric piezoelectric
ferroelectric superconductor semiconductor heterojunction perovskite
graphene fullerene zeolite aerogel hydrogel elastomer copolymer
monomer oligomer dendrimer micelle liposome exosome wallpaper
smartphone handset touchscreen emoji selfie hashtag retweet
""".split()

SPOKEN_EXTRA = """
yeah okay ok gonna wanna gotta kinda sorta hey hi hello wow oh um uh
huh hmm guys stuff guy really pretty maybe anyway actually basically
literally totally definitely probably honestly seriously awesome cool
nice fun funny crazy weird love hate phone phones app apps game games
movie movies song songs video videos photo photos pic pics haha lol
omg btw dude mom dad kids tonight tomorrow yesterday weekend lunch
dinner coffee beer pizza shopping driving watching playing listening
talking texting tweeting posting sharing download upload update
updates battery screen camera tablet laptop charger wifi bluetooth
internet online offline website email message messages chat friend
friends follower followers
""".split()


def dedupe(words: list[str]) -> list[str]:
    seen: set[str] = set()
    out: list[str] = []
    for w in words:
        w = w.strip().lower()
        if w and w not in seen:
            seen.add(w)
            out.append(w)
    return out


def zipf_counts(words: list[str], top: int, seed: int) -> list[tuple[str, int]]:
    rng = random.Random(seed)
    rows = []
    for r, w in enumerate(words, start=1):
        base = top / (r ** 1.05)
        count = max(1, int(base * (1.0 + rng.uniform(-0.03, 0.03))))
        rows.append((w, count))
    return rows


def write_profile(path: Path, rows: list[tuple[str, int]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for word, count in rows:
            fh.write(f"{word}\t{count}\n")
    print(f"wrote {path} ({len(rows)} words)")


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    written = dedupe(FUNCTION_WORDS + COMMON_WORDS + RARE_WORDS)
    write_profile(DATA_DIR / "corpus_written.tsv", zipf_counts(written, 1_100_000, seed=11))

    # Spoken profile: casual vocabulary promoted ahead of the written tier-2 words.
    spoken = dedupe(FUNCTION_WORDS + SPOKEN_EXTRA + COMMON_WORDS + RARE_WORDS)
    write_profile(DATA_DIR / "corpus_spoken.tsv", zipf_counts(spoken, 860_000, seed=13))


if __name__ == "__main__":
    main()
