#!/usr/bin/env python3
"""Regenerate the bundled fixtures: ontology.json, sounds.ndjson, candidates.ndjson.

The ontology is a deterministic stand-in for the published AudioSet ontology
file: same JSON shape (id/name/description/citation_uri/positive_examples/
child_ids/restrictions), same scale (exactly 632 categories), DAG edges with
several multi-parent nodes, and the familiar category fragments this platform
is demoed with (the Guitar family, Sigh/Groan, etc.). Drop in the real
published file via TAXOTAG_ONTOLOGY_PATH when available; everything in the
test suite that touches the ontology derives its expectations from whichever
file is configured.

Run from the repo root:  python fixtures/generate_fixtures.py
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

TARGET_COUNT = 632

# (name, [children...]) — names are unique across the whole tree; extra DAG
# edges (multi-parent nodes) are declared separately in EXTRA_EDGES.
TREE = [
    ("Human sounds", [
        ("Human voice", [
            ("Speech", [
                ("Male speech, man speaking", []),
                ("Female speech, woman speaking", []),
                ("Child speech, kid speaking", []),
                ("Conversation", []),
                ("Narration, monologue", []),
            ]),
            ("Babbling", []),
            ("Speech synthesizer", []),
            ("Shout", [
                ("Bellow", []),
                ("Whoop", []),
                ("Yell", []),
                ("Battle cry", []),
                ("Children shouting", []),
            ]),
            ("Screaming", []),
            ("Whispering", []),
            ("Laughter", [
                ("Baby laughter", []),
                ("Giggle", []),
                ("Snicker", []),
                ("Belly laugh", []),
                ("Chuckle, chortle", []),
            ]),
            ("Crying, sobbing", [
                ("Baby cry, infant cry", []),
                ("Whimper", []),
            ]),
            ("Wail, moan", []),
            ("Sigh", []),
            ("Singing", [
                ("Choir", []),
                ("Yodeling", []),
                ("Chant", [("Mantra", [])]),
                ("Male singing", []),
                ("Female singing", []),
                ("Child singing", []),
                ("Synthetic singing", []),
                ("Rapping", []),
            ]),
            ("Humming", []),
            ("Groan", []),
            ("Grunt", []),
            ("Whistling", [("Wolf-whistling", [])]),
        ]),
        ("Respiratory sounds", [
            ("Breathing", [
                ("Wheeze", []),
                ("Snoring", []),
                ("Gasp", []),
                ("Pant", []),
                ("Snort", []),
            ]),
            ("Cough", [("Throat clearing", [])]),
            ("Sneeze", []),
            ("Sniff", []),
        ]),
        ("Human locomotion", [
            ("Run", []),
            ("Shuffle", []),
            ("Walk, footsteps", []),
        ]),
        ("Digestive", [
            ("Chewing, mastication", []),
            ("Biting", []),
            ("Gargling", []),
            ("Stomach rumble", []),
            ("Burping, eructation", []),
            ("Hiccup", []),
            ("Fart", []),
        ]),
        ("Hands", [
            ("Finger snapping", []),
            ("Clapping", []),
        ]),
        ("Heart sounds, heartbeat", [("Heart murmur", [])]),
        ("Otoacoustic emission", [("Tinnitus, ringing in the ears", [])]),
        ("Human group actions", [
            ("Applause", []),
            ("Chatter", []),
            ("Crowd", []),
            ("Hubbub, speech noise, speech babble", []),
            ("Children playing", []),
            ("Booing", []),
            ("Cheering", []),
        ]),
    ]),
    ("Animal", [
        ("Domestic animals, pets", [
            ("Dog", [
                ("Bark", []),
                ("Yip", []),
                ("Howl", []),
                ("Bow-wow", []),
                ("Growling", []),
                ("Whimper (dog)", []),
            ]),
            ("Cat", [
                ("Purr", []),
                ("Meow", []),
                ("Hiss", []),
                ("Caterwaul", []),
            ]),
        ]),
        ("Livestock, farm animals, working animals", [
            ("Horse", [
                ("Clip-clop", []),
                ("Neigh, whinny", []),
            ]),
            ("Cattle, bovinae", [
                ("Moo", []),
                ("Cowbell", []),
            ]),
            ("Pig", [("Oink", [])]),
            ("Goat", [("Bleat", [])]),
            ("Sheep", []),
            ("Fowl", [
                ("Chicken, rooster", [
                    ("Cluck", []),
                    ("Crowing, cock-a-doodle-doo", []),
                ]),
                ("Turkey", [("Gobble", [])]),
                ("Duck", [("Quack", [])]),
                ("Goose", [("Honk (goose)", [])]),
            ]),
        ]),
        ("Wild animals", [
            ("Roaring cats (lions, tigers)", [("Roar", [])]),
            ("Bird", [
                ("Bird vocalization, bird call, bird song", [
                    ("Chirp, tweet", []),
                    ("Squawk", []),
                ]),
                ("Pigeon, dove", [("Coo", [])]),
                ("Crow", [("Caw", [])]),
                ("Owl", [("Hoot", [])]),
                ("Bird flight, flapping wings", []),
            ]),
            ("Canidae, dogs, wolves", []),
            ("Rodents, rats, mice", [
                ("Mouse", []),
                ("Patter", []),
            ]),
            ("Insect", [
                ("Cricket", []),
                ("Mosquito", []),
                ("Fly, housefly", [("Buzz", [])]),
                ("Bee, wasp, etc.", []),
            ]),
            ("Frog", [("Croak", [])]),
            ("Snake", [("Rattle", [])]),
            ("Whale vocalization", []),
            ("Bear", []),
        ]),
    ]),
    ("Music", [
        ("Musical instrument", [
            ("Plucked string instrument", [
                ("Guitar", [
                    ("Electric guitar", []),
                    ("Bass guitar", []),
                    ("Acoustic guitar", []),
                    ("Steel guitar, slide guitar", []),
                    ("Tapping (guitar technique)", []),
                    ("Strum", []),
                ]),
                ("Banjo", []),
                ("Sitar", []),
                ("Mandolin", []),
                ("Zither", []),
                ("Ukulele", []),
            ]),
            ("Keyboard (musical)", [
                ("Piano", [("Electric piano", [])]),
                ("Organ", [
                    ("Electronic organ", []),
                    ("Hammond organ", []),
                ]),
                ("Synthesizer", [("Sampler", [])]),
                ("Harpsichord", []),
            ]),
            ("Percussion", [
                ("Drum kit", []),
                ("Drum machine", []),
                ("Drum", [
                    ("Snare drum", [
                        ("Rimshot", []),
                        ("Drum roll", []),
                    ]),
                    ("Bass drum", []),
                    ("Timpani", []),
                    ("Tabla", []),
                ]),
                ("Cymbal", [
                    ("Hi-hat", []),
                    ("Crash cymbal", []),
                ]),
                ("Wood block", []),
                ("Tambourine", []),
                ("Rattle (instrument)", [("Maraca", [])]),
                ("Gong", []),
                ("Tubular bells", []),
                ("Mallet percussion", [
                    ("Marimba, xylophone", []),
                    ("Glockenspiel", []),
                    ("Vibraphone", []),
                    ("Steelpan", []),
                ]),
            ]),
            ("Orchestra", []),
            ("Brass instrument", [
                ("French horn", []),
                ("Trumpet", []),
                ("Trombone", []),
                ("Bugle", []),
            ]),
            ("Bowed string instrument", [
                ("String section", []),
                ("Violin, fiddle", [("Pizzicato", [])]),
                ("Cello", []),
                ("Double bass", []),
            ]),
            ("Wind instrument, woodwind instrument", [
                ("Flute", []),
                ("Saxophone", [
                    ("Alto saxophone", []),
                    ("Soprano saxophone", []),
                ]),
                ("Clarinet", []),
                ("Oboe", []),
                ("Bassoon", []),
            ]),
            ("Harp", []),
            ("Harmonica", []),
            ("Accordion", []),
            ("Bagpipes", []),
            ("Didgeridoo", []),
            ("Shofar", []),
            ("Theremin", []),
            ("Singing bowl", []),
            ("Scratching (performance technique)", []),
        ]),
        ("Music genre", [
            ("Pop music", []),
            ("Hip hop music", [("Beatboxing", [])]),
            ("Rock music", [
                ("Heavy metal", []),
                ("Punk rock", []),
                ("Grunge", []),
                ("Progressive rock", []),
                ("Rock and roll", []),
                ("Psychedelic rock", []),
            ]),
            ("Rhythm and blues", []),
            ("Soul music", []),
            ("Reggae", [("Dub", [])]),
            ("Country", [("Bluegrass", [])]),
            ("Funk", []),
            ("Folk music", []),
            ("Middle Eastern music", []),
            ("Jazz", []),
            ("Disco", []),
            ("Classical music", [("Opera", [])]),
            ("Electronic music", [
                ("House music", []),
                ("Techno", []),
                ("Dubstep", []),
                ("Drum and bass", []),
                ("Electronica", []),
                ("Electronic dance music", []),
                ("Ambient music", []),
                ("Trance music", []),
            ]),
            ("Music of Latin America", [
                ("Salsa music", []),
                ("Flamenco", []),
            ]),
            ("Blues", []),
            ("Music for children", []),
            ("New-age music", []),
            ("Vocal music", [("A capella", [])]),
            ("Music of Africa", [("Afrobeat", [])]),
            ("Christian music", [("Gospel music", [])]),
            ("Music of Asia", [
                ("Carnatic music", []),
                ("Music of Bollywood", []),
            ]),
            ("Ska", []),
            ("Traditional music", []),
            ("Independent music", []),
        ]),
        ("Musical concepts", [
            ("Song", []),
            ("Melody", []),
            ("Musical note", []),
            ("Beat", [("Drum beat", [])]),
            ("Chord", []),
            ("Harmony", []),
            ("Bassline", []),
            ("Loop", []),
            ("Drone", []),
        ]),
        ("Music role", [
            ("Background music", []),
            ("Theme music", []),
            ("Jingle (music)", []),
            ("Soundtrack music", []),
            ("Lullaby", []),
            ("Video game music", []),
            ("Christmas music", []),
            ("Dance music", []),
            ("Wedding music", []),
        ]),
        ("Music mood", [
            ("Happy music", []),
            ("Funny music", []),
            ("Sad music", []),
            ("Tender music", []),
            ("Exciting music", []),
            ("Angry music", []),
            ("Scary music", []),
        ]),
    ]),
    ("Sounds of things", [
        ("Vehicle", [
            ("Boat, Water vehicle", [
                ("Sailboat, sailing ship", []),
                ("Rowboat, canoe, kayak", []),
                ("Motorboat, speedboat", []),
                ("Ship", []),
            ]),
            ("Motor vehicle (road)", [
                ("Car", [
                    ("Vehicle horn, car horn, honking", [("Toot", [])]),
                    ("Car alarm", []),
                    ("Power windows, electric windows", []),
                    ("Skidding", []),
                    ("Tire squeal", []),
                    ("Car passing by", []),
                    ("Race car, auto racing", []),
                ]),
                ("Truck", [
                    ("Air brake", []),
                    ("Air horn, truck horn", []),
                    ("Reversing beeps", []),
                    ("Ice cream truck, ice cream van", []),
                ]),
                ("Bus", []),
                ("Emergency vehicle", [
                    ("Police car (siren)", []),
                    ("Ambulance (siren)", []),
                    ("Fire engine, fire truck (siren)", []),
                ]),
                ("Motorcycle", []),
                ("Traffic noise, roadway noise", []),
            ]),
            ("Rail transport", [
                ("Train", [
                    ("Train whistle", []),
                    ("Train horn", []),
                    ("Railroad car, train wagon", [("Train wheels squealing", [])]),
                    ("Subway, metro, underground", []),
                ]),
            ]),
            ("Aircraft", [
                ("Aircraft engine", [
                    ("Jet engine", []),
                    ("Propeller, airscrew", []),
                ]),
                ("Helicopter", []),
                ("Fixed-wing aircraft, airplane", []),
            ]),
            ("Bicycle", [("Bicycle bell", [])]),
            ("Skateboard", []),
        ]),
        ("Engine", [
            ("Light engine (high frequency)", [
                ("Dental drill, dentist's drill", []),
                ("Lawn mower", []),
                ("Chainsaw", []),
            ]),
            ("Medium engine (mid frequency)", []),
            ("Heavy engine (low frequency)", []),
            ("Engine knocking", []),
            ("Engine starting", []),
            ("Idling", []),
            ("Accelerating, revving, vroom", []),
        ]),
        ("Domestic sounds, home sounds", [
            ("Door", [
                ("Doorbell", [("Ding-dong", [])]),
                ("Sliding door", []),
                ("Slam", []),
                ("Knock", []),
                ("Tap", []),
            ]),
            ("Cupboard open or close", []),
            ("Drawer open or close", []),
            ("Dishes, pots, and pans", []),
            ("Cutlery, silverware", []),
            ("Chopping (food)", []),
            ("Frying (food)", []),
            ("Microwave oven", []),
            ("Blender", []),
            ("Water tap, faucet", []),
            ("Sink (filling or washing)", []),
            ("Bathtub (filling or washing)", []),
            ("Hair dryer", []),
            ("Toilet flush", []),
            ("Toothbrush", [("Electric toothbrush", [])]),
            ("Vacuum cleaner", []),
            ("Zipper (clothing)", []),
            ("Keys jangling", []),
            ("Coin (dropping)", []),
            ("Scissors", []),
            ("Electric shaver, electric razor", []),
            ("Shuffling cards", []),
            ("Typing", [
                ("Typewriter", []),
                ("Computer keyboard", []),
            ]),
            ("Writing", []),
        ]),
        ("Bell", [
            ("Church bell", []),
            ("Jingle bell", []),
            ("Tuning fork", []),
            ("Chime", [("Wind chime", [])]),
            ("Change ringing (campanology)", []),
        ]),
        ("Alarm", [
            ("Telephone", [
                ("Telephone bell ringing", []),
                ("Ringtone", []),
                ("Telephone dialing, DTMF", []),
                ("Dial tone", []),
                ("Busy signal", []),
            ]),
            ("Alarm clock", []),
            ("Siren", [("Civil defense siren", [])]),
            ("Buzzer", []),
            ("Smoke detector, smoke alarm", []),
            ("Fire alarm", []),
            ("Foghorn", []),
            ("Whistle", [("Steam whistle", [])]),
        ]),
        ("Mechanisms", [
            ("Ratchet, pawl", []),
            ("Clock", [
                ("Tick", []),
                ("Tick-tock", []),
            ]),
            ("Gears", []),
            ("Pulleys", []),
            ("Sewing machine", []),
            ("Mechanical fan", []),
            ("Air conditioning", []),
            ("Cash register", []),
            ("Printer", []),
            ("Camera", [("Single-lens reflex camera", [])]),
        ]),
        ("Tools", [
            ("Hammer", []),
            ("Jackhammer", []),
            ("Sawing", []),
            ("Filing (rasp)", []),
            ("Sanding", []),
            ("Power tool", [("Drill", [])]),
        ]),
        ("Liquid", [
            ("Splash, splatter", []),
            ("Slosh", []),
            ("Squish", []),
            ("Drip", []),
            ("Pour", []),
            ("Trickle, dribble", []),
            ("Gush", []),
            ("Fill (with liquid)", []),
            ("Spray", []),
            ("Pump (liquid)", []),
            ("Stir", []),
            ("Boiling", []),
        ]),
        ("Explosion", [
            ("Gunshot, gunfire", [
                ("Machine gun", []),
                ("Fusillade", []),
                ("Artillery fire", []),
                ("Cap gun", []),
            ]),
            ("Fireworks", [("Firecracker", [])]),
            ("Burst, pop", []),
            ("Eruption", []),
            ("Boom", []),
        ]),
        ("Wood", [
            ("Chop", []),
            ("Splinter", []),
            ("Crack", []),
        ]),
        ("Glass", [
            ("Chink, clink", []),
            ("Shatter", []),
        ]),
    ]),
    ("Natural sounds", [
        ("Wind", [
            ("Rustling leaves", []),
            ("Wind noise (microphone)", []),
            ("Howl (wind)", []),
        ]),
        ("Thunderstorm", [("Thunder", [])]),
        ("Water", [
            ("Rain", [
                ("Raindrop", []),
                ("Rain on surface", []),
            ]),
            ("Stream", []),
            ("Waterfall", []),
            ("Ocean", [("Waves, surf", [])]),
            ("Gurgling", []),
            ("Steam", []),
        ]),
        ("Fire", [
            ("Crackle", []),
            ("Wildfire", []),
        ]),
    ]),
    ("Source-ambiguous sounds", [
        ("Generic impact sounds", [
            ("Bang", []),
            ("Slap, smack", []),
            ("Whack, thwack", []),
            ("Smash, crash", []),
            ("Breaking", []),
            ("Bouncing", []),
            ("Whip", []),
            ("Flap", []),
            ("Basketball bounce", []),
            ("Thump, thud", [("Thunk", [])]),
        ]),
        ("Surface contact", [
            ("Scratch", []),
            ("Scrape", []),
            ("Rub", []),
            ("Roll", []),
            ("Grind", []),
        ]),
        ("Deformable shell", [
            ("Crushing", []),
            ("Crumpling, crinkling", []),
            ("Tearing", []),
        ]),
        ("Onomatopoeia", [
            ("Plop", []),
            ("Jingle, tinkle", []),
            ("Fizz", []),
            ("Puff", []),
            ("Hum", []),
            ("Zing", []),
            ("Boing", []),
            ("Crunch", []),
            ("Creak", []),
            ("Rustle", []),
            ("Whir", []),
            ("Clatter", []),
            ("Sizzle", []),
            ("Clicking", [("Clickety-clack", [])]),
            ("Rumble", []),
            ("Whoosh, swoosh, swish", []),
            ("Clang", []),
            ("Squeak", []),
            ("Ding", []),
            ("Beep, bleep", []),
            ("Ping", []),
            ("Pop", []),
            ("Clunk", []),
        ]),
        ("Silence", []),
        ("Sine wave", [
            ("Harmonic", []),
            ("Chirp tone", []),
        ]),
        ("Sound effect", []),
        ("Pulse", []),
        ("Noise", [
            ("White noise", []),
            ("Pink noise", []),
            ("Static", []),
            ("Mains hum", []),
            ("Distortion", []),
            ("Sidetone", []),
            ("Cacophony", []),
            ("Throbbing", []),
            ("Vibration", []),
            ("Environmental noise", []),
        ]),
    ]),
    ("Channel, environment and background", [
        ("Acoustic environment", [
            ("Inside, small room", []),
            ("Inside, large room or hall", []),
            ("Inside, public space", []),
            ("Outside, urban or manmade", []),
            ("Outside, rural or natural", []),
            ("Reverberation", []),
            ("Echo", []),
        ]),
        ("Recording artefacts", [
            ("Field recording", []),
            ("Clipping (audio)", []),
            ("Microphone handling noise", []),
        ]),
    ]),
]

# additional parents: (parent name, child name) — these make the graph a DAG
EXTRA_EDGES = [
    ("Cat", "Hiss"),            # primary parent is Cat; the others join here
    ("Snake", "Hiss"),
    ("Onomatopoeia", "Hiss"),
    ("Steam", "Hiss"),
    ("Roaring cats (lions, tigers)", "Growling"),
    ("Bear", "Growling"),
    ("Mosquito", "Buzz"),
    ("Bee, wasp, etc.", "Buzz"),
    ("Percussion", "Cowbell"),
    ("Bell", "Bicycle bell"),
    ("Door", "Squeak"),
    ("Mouse", "Squeak"),
    ("Horse", "Snort"),
    ("Fire", "Crackle"),        # placed under Fire; also an onomatopoeia
    ("Onomatopoeia", "Crackle"),
    ("Onomatopoeia", "Rattle"),
]
# EXTRA_EDGES entries whose parent is the node's only declared location keep
# their tree position as primary; Hiss/Growling/Buzz/Cowbell/... are declared
# once in TREE and gain parents here.
_DECLARED_ONCE = {"Hiss", "Growling", "Buzz", "Cowbell", "Bicycle bell", "Squeak",
                  "Snort", "Crackle", "Rattle"}

ABSTRACT_NAMES = {
    "Human sounds",
    "Animal",
    "Music",
    "Sounds of things",
    "Natural sounds",
    "Source-ambiguous sounds",
    "Channel, environment and background",
    "Music genre",
    "Musical concepts",
    "Music role",
    "Music mood",
    "Generic impact sounds",
    "Surface contact",
    "Deformable shell",
    "Onomatopoeia",
    "Acoustic environment",
    "Recording artefacts",
}

BLACKLIST_NAMES = {
    "Sidetone",
    "Cacophony",
    "Pulse",
    "Field recording",
    "Clipping (audio)",
}

DESCRIPTIONS = {
    "Guitar": "A fretted string instrument, usually with six strings, played by strumming or plucking.",
    "Electric guitar": "A guitar whose sound is produced by electromagnetic pickups and an amplifier.",
    "Bass guitar": "A low-pitched guitar with four thick strings, supplying the bass line.",
    "Acoustic guitar": "A guitar that produces sound acoustically through a hollow wooden body.",
    "Steel guitar, slide guitar": "Guitar technique in which a hard object is slid along the strings for a gliding pitch.",
    "Tapping (guitar technique)": "Notes sounded by tapping the strings against the fretboard with either hand.",
    "Strum": "Sounding several guitar strings together with a sweeping motion of the hand.",
    "Sigh": "An audible exhalation expressing tiredness, relief or resignation.",
    "Groan": "A low inarticulate vocal sound expressing effort, pain or displeasure.",
    "Speech": "Spoken language; the sound of a person talking.",
    "Laughter": "Rhythmic vocal sounds expressing amusement.",
    "Singing": "Musical sounds produced with the human voice in melody.",
    "Whistling": "A clear tone produced by forcing breath through pursed lips.",
    "Dog": "Vocalizations and other sounds produced by domestic dogs.",
    "Bark": "The short explosive vocalization typical of dogs.",
    "Cat": "Vocalizations and other sounds produced by domestic cats.",
    "Meow": "The characteristic call of a cat.",
    "Purr": "A continuous soft vibratory sound made by contented cats.",
    "Hiss": "A sustained sibilant sound, as from an alarmed animal, escaping steam or gas.",
    "Bird": "Sounds produced by birds, including calls, songs and wing movement.",
    "Buzz": "The continuous low hum of a rapidly vibrating insect wing or mechanism.",
    "Growling": "A low guttural threatening sound produced by an animal.",
    "Cowbell": "The clank of the bell hung around the neck of grazing cattle, or its percussion counterpart.",
    "Piano": "A keyboard instrument sounding hammered strings.",
    "Music": "Organized sound, generally melodic, harmonic or rhythmic.",
    "Bell": "A hollow object that rings when struck.",
    "Bicycle bell": "The bright double ring of a bell mounted on bicycle handlebars.",
    "Siren": "A loud wailing tone used by emergency services and warning systems.",
    "Rain": "The sound of falling rain.",
    "Thunder": "The rumbling or cracking sound following lightning.",
    "Ocean": "The broadband wash of the sea.",
    "Applause": "The sound of many hands clapping in approval.",
    "Engine": "The sound of a motor converting fuel or electricity into motion.",
    "Train": "Sounds of rail vehicles in motion, their horns and whistles.",
    "Silence": "The near absence of audible sound.",
    "White noise": "Noise with equal intensity across frequencies, like an untuned radio.",
    "Speech synthesizer": "Artificially generated spoken language.",
    "Vacuum cleaner": "The drone of a household vacuum cleaner motor and airflow.",
    "Telephone": "Ringing, dialing and signalling sounds of telephones.",
    "Fireworks": "Explosive crackles and booms of pyrotechnic displays.",
    "Heart sounds, heartbeat": "The rhythmic lub-dub of the beating heart.",
    "Squeak": "A short very high-pitched sound, as of a mouse or an unoiled hinge.",
}

# names appended (in order) under the given parents until the target count is
# reached; drawn from the same everyday-sound vocabulary as the rest
PAD_POOL = [
    ("Bird", "Hummingbird"), ("Bird", "Seagull"), ("Bird", "Woodpecker"),
    ("Bird", "Canary"), ("Bird", "Parrot"), ("Bird", "Cuckoo"),
    ("Wild animals", "Elephant"), ("Wild animals", "Monkey"), ("Wild animals", "Dolphin"),
    ("Wild animals", "Coyote"), ("Wild animals", "Seal (animal)"), ("Wild animals", "Bat"),
    ("Insect", "Cicada"), ("Insect", "Beetle"), ("Insect", "Grasshopper"),
    ("Domestic animals, pets", "Hamster"), ("Domestic animals, pets", "Parakeet"),
    ("Livestock, farm animals, working animals", "Donkey"),
    ("Livestock, farm animals, working animals", "Camel"),
    ("Percussion", "Castanets"), ("Percussion", "Claves"), ("Percussion", "Triangle (instrument)"),
    ("Percussion", "Bongo drums"), ("Percussion", "Conga drums"), ("Percussion", "Djembe"),
    ("Brass instrument", "Tuba"), ("Brass instrument", "Flugelhorn"),
    ("Wind instrument, woodwind instrument", "Piccolo"),
    ("Wind instrument, woodwind instrument", "Recorder (instrument)"),
    ("Wind instrument, woodwind instrument", "Pan flute"),
    ("Wind instrument, woodwind instrument", "Ocarina"),
    ("Keyboard (musical)", "Celesta"), ("Keyboard (musical)", "Mellotron"),
    ("Plucked string instrument", "Lute"), ("Plucked string instrument", "Oud"),
    ("Plucked string instrument", "Balalaika"), ("Plucked string instrument", "Koto"),
    ("Bowed string instrument", "Viola"), ("Bowed string instrument", "Erhu"),
    ("Music genre", "Swing music"), ("Music genre", "Tango music"),
    ("Music genre", "Polka"), ("Music genre", "Celtic music"),
    ("Music genre", "Chiptune"), ("Music genre", "Lo-fi music"),
    ("Music role", "Elevator music, muzak"), ("Music role", "Circus music"),
    ("Music mood", "Calm music"), ("Music mood", "Triumphant music"),
    ("Car", "Windshield wipers"), ("Car", "Car door slam"), ("Car", "Seat belt warning"),
    ("Motor vehicle (road)", "Moped, scooter"), ("Motor vehicle (road)", "Tractor"),
    ("Aircraft", "Drone (aircraft)"), ("Aircraft", "Glider"),
    ("Rail transport", "Tram, streetcar"), ("Rail transport", "Level crossing bell"),
    ("Boat, Water vehicle", "Ferry"), ("Boat, Water vehicle", "Jet ski"),
    ("Domestic sounds, home sounds", "Washing machine"),
    ("Domestic sounds, home sounds", "Dishwasher"),
    ("Domestic sounds, home sounds", "Kettle whistle"),
    ("Domestic sounds, home sounds", "Refrigerator hum"),
    ("Domestic sounds, home sounds", "Ironing"),
    ("Domestic sounds, home sounds", "Curtain (drawing)"),
    ("Domestic sounds, home sounds", "Light switch"),
    ("Domestic sounds, home sounds", "Page turning"),
    ("Domestic sounds, home sounds", "Plastic bag rustle"),
    ("Domestic sounds, home sounds", "Cork pop"),
    ("Tools", "Screwdriver"), ("Tools", "Wrench"), ("Tools", "Angle grinder"),
    ("Tools", "Welding"), ("Tools", "Axe"),
    ("Mechanisms", "Turnstile"), ("Mechanisms", "Escalator"),
    ("Mechanisms", "Elevator, lift"), ("Mechanisms", "Conveyor belt"),
    ("Mechanisms", "Windmill"), ("Mechanisms", "Water pump"),
    ("Alarm", "Air raid siren"), ("Alarm", "Car horn (distant)"),
    ("Alarm", "Burglar alarm"), ("Alarm", "Tornado siren"),
    ("Liquid", "Bubble"), ("Liquid", "Plunger"), ("Liquid", "Carbonation fizz"),
    ("Wind", "Gust"), ("Wind", "Wind through trees"),
    ("Water", "River rapids"), ("Water", "Drain"), ("Water", "Puddle splash"),
    ("Fire", "Campfire"), ("Fire", "Flame whoosh"),
    ("Natural sounds", "Earthquake rumble"), ("Natural sounds", "Avalanche"),
    ("Natural sounds", "Hail"), ("Natural sounds", "Geyser"),
    ("Generic impact sounds", "Clink (metal)"), ("Generic impact sounds", "Knock (hollow)"),
    ("Onomatopoeia", "Splat"), ("Onomatopoeia", "Twang"), ("Onomatopoeia", "Whump"),
    ("Onomatopoeia", "Screech"), ("Onomatopoeia", "Chug"), ("Onomatopoeia", "Zap"),
    ("Noise", "Brown noise"), ("Noise", "Hiss (tape)"), ("Noise", "Crosstalk"),
    ("Acoustic environment", "Anechoic"), ("Acoustic environment", "Underwater ambience"),
    ("Recording artefacts", "Wow and flutter"), ("Recording artefacts", "Vinyl crackle"),
    ("Human group actions", "Stadium crowd"), ("Human group actions", "Protest chant"),
    ("Human voice", "Beatbox vocal percussion"), ("Human voice", "Vocal fry"),
    ("Respiratory sounds", "Yawn"), ("Digestive", "Slurp"), ("Digestive", "Gulp"),
    ("Hands", "Knuckle crack"), ("Human locomotion", "Jump (footfall)"),
    ("Human locomotion", "Crawling"), ("Human locomotion", "Stomp"),
]

def category_id(name: str) -> str:
    digest = hashlib.blake2b(name.encode("utf-8"), digest_size=5).hexdigest()
    return f"/m/{digest}"


def build():
    # collect nodes and tree edges in document order
    order: list[str] = []
    children: dict[str, list[str]] = {}

    def walk(nodes):
        for name, kids in nodes:
            if name in children:
                raise SystemExit(f"duplicate name in TREE: {name}")
            children[name] = []
            order.append(name)
            for kid_name, _ in kids:
                children[name].append(kid_name)
            walk(kids)

    walk(TREE)

    for parent, child in EXTRA_EDGES:
        if parent not in children or child not in children:
            raise SystemExit(f"EXTRA_EDGES references unknown node: {parent} -> {child}")
        if child not in children[parent]:
            children[parent].append(child)

    missing = TARGET_COUNT - len(order)
    if missing < 0:
        raise SystemExit(f"tree already has {len(order)} nodes, more than {TARGET_COUNT}")
    if missing > len(PAD_POOL):
        raise SystemExit(f"PAD_POOL too small: need {missing}, have {len(PAD_POOL)}")
    for parent, name in PAD_POOL[:missing]:
        if name in children:
            raise SystemExit(f"duplicate name in PAD_POOL: {name}")
        children[name] = []
        children[parent].append(name)
        order.append(name)

    records = []
    for position, name in enumerate(order):
        cid = category_id(name)
        h = int(hashlib.blake2b(name.encode(), digest_size=2).hexdigest(), 16)
        description = DESCRIPTIONS.get(name)
        if description is None:
            if h % 7 == 0:
                description = ""
            elif h % 2 == 0:
                description = f"Sounds associated with {name.lower()}."
            else:
                description = f"The sound of {name.lower()}."
        slug = name.lower().replace(" ", "-").replace(",", "").replace("(", "").replace(")", "").replace("'", "")
        examples = []
        if name in DESCRIPTIONS or h % 3 == 0:
            examples = [
                f"https://sounds.example.org/{slug}-{i + 1}.ogg"
                for i in range(1 + h % 2)
            ]
        restrictions = []
        if name in ABSTRACT_NAMES:
            restrictions.append("abstract")
        if name in BLACKLIST_NAMES:
            restrictions.append("blacklist")
        records.append(
            {
                "id": cid,
                "name": name,
                "description": description,
                "citation_uri": (
                    f"https://en.wikipedia.org/wiki/{name.split(',')[0].replace(' ', '_')}"
                    if name in DESCRIPTIONS
                    else ""
                ),
                "positive_examples": examples,
                "child_ids": [category_id(c) for c in children[name]],
                "restrictions": restrictions,
            }
        )
    assert len(records) == TARGET_COUNT, len(records)
    assert len({r["id"] for r in records}) == TARGET_COUNT, "id collision"
    return records, {name: category_id(name) for name in order}


SOUNDS = [
    ("s01", "Acoustic strumming in a small room", 14.0, ["guitar", "strum", "acoustic"],
     "Fingerpicked acoustic guitar recorded close."),
    ("s02", "City street at rush hour", 42.5, ["city", "traffic", "field-recording"],
     "Cars passing, distant horns, footsteps on pavement."),
    ("s03", "Kitchen: chopping vegetables", 21.0, ["kitchen", "chopping", "food"],
     "Knife on wooden cutting board, occasional pot clank."),
    ("s04", "Morning birds in the garden", 60.0, ["birds", "morning", "garden"],
     "Several songbirds, light wind in leaves."),
    ("s05", "Dog barking behind a fence", 9.5, ["dog", "bark"],
     "Medium-sized dog, two bark bursts, street ambience."),
    ("s06", "Thunderstorm rolling in", 95.0, ["thunder", "rain", "storm"],
     "Distant thunder, rain picking up towards the end."),
    ("s07", "Old typewriter, fast typing", 18.2, ["typewriter", "office", "vintage"],
     "Mechanical typewriter with carriage return bell."),
    ("s08", "Crowd applause after a speech", 12.0, ["applause", "crowd"],
     "Indoor hall, enthusiastic clapping with a few whistles."),
    ("s09", "Electric guitar riff with distortion", 16.3, ["guitar", "electric", "riff"],
     "Overdriven electric guitar, single take, no drums."),
    ("s10", "Cat purring close to the mic", 30.0, ["cat", "purr", "pet"],
     "Steady purr with occasional swallow."),
    ("s11", "Train passing a level crossing", 28.4, ["train", "railway", "crossing"],
     "Warning bell, then freight train passes with horn."),
    ("s12", "Church bells at noon", 75.0, ["bells", "church", "city"],
     "Full peal from a stone tower, pigeons taking off."),
    ("s13", "Baby laughing", 11.1, ["baby", "laughter"],
     "Infant belly laugh, indoor, close mic."),
    ("s14", "Creaky wooden door", 7.8, ["door", "creak", "squeak"],
     "Slow opening, pronounced hinge squeak, latch click."),
    ("s15", "Mosquito flying near the ear", 13.7, ["mosquito", "insect", "buzz"],
     "High-pitched whine moving left to right."),
    ("s16", "Fireplace crackling", 48.0, ["fire", "crackle", "cozy"],
     "Logs settling, steady crackle, room tone."),
    ("s17", "Espresso machine steaming milk", 19.9, ["coffee", "steam", "cafe"],
     "Hiss of the steam wand, cup clinks, cafe murmur."),
    ("s18", "Jazz trio soundcheck", 52.6, ["jazz", "piano", "double-bass"],
     "Piano comping, brushed snare, walking bass."),
    ("s19", "Waves on a pebble beach", 88.8, ["ocean", "waves", "beach"],
     "Regular surf, pebbles dragging on the backwash."),
    ("s20", "Workshop: electric drill", 10.4, ["drill", "workshop", "tool"],
     "Short bursts of a cordless drill, screws dropped on bench."),
    ("s21", "Night crickets and a distant owl", 66.0, ["crickets", "night", "owl"],
     "Dense cricket bed, owl hoots twice."),
    ("s22", "Horse trotting on cobblestones", 24.5, ["horse", "hooves", "street"],
     "Clip-clop with harness jingle, urban reverb."),
    ("s23", "Choir rehearsal warm-up", 35.5, ["choir", "singing", "rehearsal"],
     "Unison scales swelling, conductor taps a stand."),
    ("s24", "Vacuum cleaner in the hallway", 27.0, ["vacuum", "household"],
     "Motor drone with pitch changes over carpet and tile."),
]

# refinement proposals per sound: plausible-but-generic labels a candidate
# generator would emit, ready to be specialized by an annotator
CANDIDATES = [
    ("s01", ["Guitar", "Music"]),
    ("s02", ["Vehicle", "Traffic noise, roadway noise"]),
    ("s03", ["Domestic sounds, home sounds"]),
    ("s04", ["Bird", "Wild animals"]),
    ("s05", ["Dog", "Animal"]),
    ("s06", ["Thunderstorm", "Rain"]),
    ("s07", ["Typing"]),
    ("s08", ["Human group actions", "Clapping"]),
    ("s09", ["Guitar", "Music"]),
    ("s10", ["Cat"]),
    ("s11", ["Train", "Bell"]),
    ("s12", ["Bell", "Church bell"]),
    ("s13", ["Laughter", "Baby laughter"]),
    ("s14", ["Door", "Squeak"]),
    ("s15", ["Insect", "Buzz"]),
    ("s16", ["Fire", "Crackle"]),
    ("s17", ["Steam", "Hiss"]),
    ("s18", ["Music", "Piano"]),
    ("s19", ["Ocean", "Water"]),
    ("s20", ["Power tool", "Drill"]),
    ("s21", ["Insect", "Owl"]),
    ("s22", ["Horse", "Clip-clop"]),
    ("s23", ["Singing", "Choir"]),
    ("s24", ["Vacuum cleaner"]),
]


def main() -> None:
    here = Path(__file__).resolve().parent
    records, ids_by_name = build()

    (here / "ontology.json").write_text(json.dumps(records, indent=2) + "\n", encoding="utf-8")

    with (here / "sounds.ndjson").open("w", encoding="utf-8") as fh:
        for sound_id, title, duration, tags, description in SOUNDS:
            doc = {
                "sound_id": sound_id,
                "title": title,
                "audio_uri": f"/audio/{sound_id}.wav",
                "duration_s": duration,
                "metadata": {"description": description, "tags": tags},
            }
            if int(sound_id[1:]) % 2 == 1:
                doc["spectrogram_uri"] = f"/audio/{sound_id}.png"
            fh.write(json.dumps(doc) + "\n")

    with (here / "candidates.ndjson").open("w", encoding="utf-8") as fh:
        for sound_id, names in CANDIDATES:
            for name in names:
                record = {
                    "sound_id": sound_id,
                    "category_id": ids_by_name[name],
                    "source": "freesound-candidates-v1",
                }
                fh.write(json.dumps(record) + "\n")

    print(f"ontology.json: {len(records)} categories")
    print(f"sounds.ndjson: {len(SOUNDS)} sounds")
    print(f"candidates.ndjson: {sum(len(n) for _, n in CANDIDATES)} candidate labels")


if __name__ == "__main__":
    main()
